use englert_sums::oracle::agreement_threshold;
use englert_sums::{eval, eval_via_relation, oracle_eval, singular_distance, SumFamily};

const TOL: f64 = 1e-8;

fn grid() -> Vec<f64> {
    (0..64)
        .map(|i| -1.3 + (i as f64 + 0.37) * 4.0 / 64.0)
        .collect()
}

fn families() -> Vec<SumFamily> {
    let mut out = Vec::new();
    for code in SumFamily::CODES {
        for n in 0..=4 {
            if let Ok(f) = SumFamily::parse(code, n) {
                out.push(f);
            }
        }
    }
    out
}

#[test]
fn closed_forms_match_the_oracle() {
    let mut failures = Vec::new();
    for f in families() {
        for z in grid() {
            if singular_distance(&f, z) < 1e-3 {
                continue;
            }
            let cf = eval(&f, z).unwrap();
            let o = oracle_eval(&f, z, TOL).unwrap();
            let thr = agreement_threshold(&f, &o, TOL);
            if (cf.value - o.value).abs() > thr {
                failures.push(format!("{f} z={z}: {} vs {}", cf.value, o.value));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn direct_and_relation_paths_agree() {
    for f in families() {
        for z in grid() {
            if singular_distance(&f, z) < 1e-3 {
                continue;
            }
            let a = eval(&f, z).unwrap().value;
            let b = eval_via_relation(&f, z).unwrap().value;
            assert!((a - b).abs() <= 1e-9, "{f} z={z}: {a} vs {b}");
        }
    }
}
