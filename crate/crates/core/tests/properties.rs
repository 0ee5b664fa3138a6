use englert_sums::oracle::{partial_sum, term, NeumaierSum};
use englert_sums::{
    bernoulli, centered, eval, frac, li_on_circle, singular_distance, IndexKind, Rational,
    SumFamily, Trig, UnitCirclePoint,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = SumFamily> {
    (0..SumFamily::CODES.len(), 0u32..4).prop_filter_map("unsupported order", |(i, n)| {
        SumFamily::parse(SumFamily::CODES[i], n).ok()
    })
}

fn regular(f: &SumFamily, zs: &[f64]) -> bool {
    zs.iter().all(|&z| singular_distance(f, z) > 1e-3)
}

proptest! {
    #[test]
    fn bracket_ranges(z in -1e6f64..1e6) {
        let c = centered(z).unwrap().value();
        prop_assert!((-0.5..0.5).contains(&c));
        let f = frac(z).unwrap().value();
        prop_assert!((0.0..1.0).contains(&f));
    }

    #[test]
    fn bracket_periodic(z in -100.0f64..100.0, k in -50i32..50) {
        let a = centered(z).unwrap().value();
        let b = centered(z + k as f64).unwrap().value();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn sums_are_periodic(f in family(), z in -2.0f64..2.0) {
        prop_assume!(regular(&f, &[z, z + 1.0, z + 0.5]));
        let a = eval(&f, z).unwrap().value;
        let b = eval(&f, z + 1.0).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "{} {} {}", f, a, b);
        if f.index() == IndexKind::Odd {
            let c = eval(&f, z + 0.5).unwrap().value;
            prop_assert!((a + c).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn sums_have_parity(f in family(), z in -2.0f64..2.0) {
        prop_assume!(regular(&f, &[z, -z]));
        let a = eval(&f, z).unwrap().value;
        let b = eval(&f, -z).unwrap().value;
        let want = match f.trig() {
            Trig::Sin => -a,
            Trig::Cos => a,
        };
        prop_assert!((b - want).abs() <= 1e-9 * (1.0 + a.abs()), "{} {} {}", f, a, b);
    }

    #[test]
    fn polylog_conjugation(a in 1u32..8, t in 0.01f64..0.99) {
        let p = UnitCirclePoint::from_turns(t).unwrap();
        let x = li_on_circle(a, p).unwrap();
        let y = li_on_circle(a, p.conj()).unwrap();
        prop_assert!((x.real_part - y.real_part).abs() <= 1e-12);
        prop_assert!((x.imag_part + y.imag_part).abs() <= 1e-12);
    }
}

/// Bernoulli numbers from the tangent numbers:
/// B_2m = (-1)^(m-1) 2m T_m / (2^2m (2^2m - 1)), with T_m the tangent numbers.
fn bernoulli_by_tangent_numbers(limit: usize) -> Vec<Rational> {
    let m_max = limit / 2;
    let mut t = vec![BigInt::zero(); m_max + 2];
    t[1] = BigInt::one();
    for k in 2..=m_max {
        t[k] = BigInt::from(k - 1) * &t[k - 1];
    }
    for k in 2..=m_max {
        for j in k..=m_max {
            t[j] = BigInt::from(j - k) * &t[j - 1] + BigInt::from(j - k + 2) * &t[j];
        }
    }
    let mut b = vec![Rational::zero(); limit + 1];
    b[0] = Rational::one();
    b[1] = Rational::new(BigInt::from(-1), BigInt::from(2));
    for m in 1..=m_max {
        let four = BigInt::one() << (2 * m);
        let num = BigInt::from(2 * m) * &t[m];
        let den = &four * (&four - 1);
        let v = Rational::new(num, den);
        b[2 * m] = if m % 2 == 1 { v } else { -v };
    }
    b
}

#[test]
fn bernoulli_agrees_with_tangent_numbers() {
    let want = bernoulli_by_tangent_numbers(64);
    for (r, w) in want.iter().enumerate() {
        assert_eq!(&bernoulli(r).unwrap(), w, "B_{r}");
    }
}

#[test]
fn compensated_sum_is_order_independent() {
    let f = SumFamily::new(IndexKind::Natural, true, Trig::Cos, false, 1).unwrap();
    let terms: Vec<f64> = (1..=20_000).map(|k| term(&f, 0.3, k)).collect();
    let forward: NeumaierSum = terms.iter().copied().collect();
    let backward: NeumaierSum = terms.iter().rev().copied().collect();
    let mut shuffled = terms.clone();
    // a fixed reordering unrelated to magnitude
    shuffled.sort_by_key(|x| (x.to_bits() % 7, x.to_bits()));
    let mixed: NeumaierSum = shuffled.into_iter().collect();
    assert!((forward.value() - backward.value()).abs() <= 1e-13);
    assert!((forward.value() - mixed.value()).abs() <= 1e-13);
    assert_eq!(forward.value(), partial_sum(&f, 0.3, 20_000));
}
