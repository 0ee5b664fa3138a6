//! Direct partial summation of the series, independent of every closed form.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bracket::sincos_pi;
use crate::error::{ensure_finite, Error, Result};
use crate::sums::{singular_points, IndexKind, SumFamily, Trig};

/// Smallest tolerance `oracle_eval` accepts.
pub const MIN_TOL: f64 = 1e-10;

/// Looser agreement level used for conditionally convergent families.
pub const CONDITIONAL_TOL: f64 = 1e-5;

const START_ABSOLUTE: u64 = 64;
const START_CONDITIONAL: u64 = 1 << 12;
const CAP_CONDITIONAL: u64 = 1 << 23;
const CAP_P2: u64 = 1 << 24;
const CAP_HIGHER: u64 = 1 << 17;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merges another partial sum (for tree reductions).
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    Absolute,
    AveragedConditional,
}

impl OracleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleMode::Absolute => "absolute",
            OracleMode::AveragedConditional => "averaged-conditional",
        }
    }
}

impl std::fmt::Display for OracleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub value: f64,
    pub terms_used: u64,
    pub tail_bound: f64,
    pub mode: OracleMode,
}

/// `m z mod 1` with `m z` formed without rounding loss in the integer part.
fn turns(m: u64, z: f64) -> f64 {
    let zi = z.floor();
    let zf = z - zi;
    let mf = m as f64;
    let p = mf * zf;
    let e = mf.mul_add(zf, -p);
    let t = (p - p.floor()) + e;
    t - t.floor()
}

fn first_index(f: &SumFamily) -> u64 {
    match f.index() {
        IndexKind::Natural => 1,
        IndexKind::Odd | IndexKind::Modified => 0,
    }
}

fn structure(f: &SumFamily, k: u64) -> (u64, u64) {
    // (multiplier of z in the argument, integer in the denominator)
    match f.index() {
        IndexKind::Natural => (k, k),
        IndexKind::Odd => (2 * k + 1, 2 * k + 1),
        IndexKind::Modified => (k, 2 * k + 1),
    }
}

/// The summand of index `k` (`k >= 1` for natural families, `k >= 0` otherwise).
pub fn term(f: &SumFamily, z: f64, k: u64) -> f64 {
    let (m, d) = structure(f, k);
    let (s, c) = sincos_pi(2.0 * turns(m, z));
    let trig = match f.trig() {
        Trig::Sin => s,
        Trig::Cos => c,
    };
    let sign = if f.alternating() && k % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    let p = f.power() as i32;
    sign * trig / (PI * d as f64).powi(p)
}

/// Compensated sum of the first `n` summands.
pub fn partial_sum(f: &SumFamily, z: f64, n: u64) -> f64 {
    let k0 = first_index(f);
    (k0..k0 + n)
        .map(|k| term(f, z, k))
        .collect::<NeumaierSum>()
        .value()
}

/// `|sin(phi/2)|` for the per-term phase step of the series at `z`.
fn phase_gap(f: &SumFamily, z: f64) -> f64 {
    let spacing = match f.index() {
        IndexKind::Odd => 2,
        _ => 1,
    };
    // phi / 2 = pi (spacing z + alt / 2)
    let half = if f.alternating() { 0.5 } else { 0.0 };
    sincos_pi(turns(spacing, z) + half).0.abs()
}

/// Bound on the tail beyond the first `n` terms of an absolutely convergent series.
fn tail_bound(f: &SumFamily, n: u64, gap: f64) -> f64 {
    let p = f.power() as i32;
    let pi_p = PI.powi(p);
    let (last, integral) = match f.index() {
        IndexKind::Natural => {
            let nf = n as f64;
            (
                1.0 / (pi_p * (nf + 1.0).powi(p)),
                1.0 / (pi_p * (p - 1) as f64 * nf.powi(p - 1)),
            )
        }
        _ => {
            let d = 2.0 * n as f64 + 1.0;
            (
                1.0 / (pi_p * d.powi(p)),
                1.0 / (pi_p * 2.0 * (p - 1) as f64 * (d - 2.0).max(1.0).powi(p - 1)),
            )
        }
    };
    if gap > 0.0 {
        integral.min(last / gap)
    } else {
        integral
    }
}

fn irwin_hall3_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x <= 1.0 {
        x * x * x / 6.0
    } else if x <= 2.0 {
        (-2.0 * x * x * x + 9.0 * x * x - 9.0 * x + 3.0) / 6.0
    } else if x < 3.0 {
        let y = 3.0 - x;
        1.0 - y * y * y / 6.0
    } else {
        1.0
    }
}

/// Weight of term `j` (counted from 0) in a sum truncated at `n` terms: the
/// partial sums averaged three times over windows of `(3/4) n / 3` terms.
fn taper(j: u64, n: u64) -> f64 {
    let m = n / 4;
    if j < m {
        return 1.0;
    }
    let width = (n - m) as f64 / 3.0;
    1.0 - irwin_hall3_cdf((j - m) as f64 / width)
}

/// Value of the series at `z` by direct summation.
///
/// Families with denominator power `p >= 2` are summed until a rigorous tail
/// bound is below `tol`. For `p <= 1` the partial sums are smoothed by
/// repeated window averaging, which converges to the Abel/Cesaro value away
/// from singular points; the reported bound is the change between the
/// smoothed sums at `N` and `N/2` terms.
pub fn oracle_eval(f: &SumFamily, z: f64, tol: f64) -> Result<OracleReport> {
    ensure_finite(z)?;
    if tol.is_nan() || tol < MIN_TOL {
        return Err(Error::Domain(format!(
            "tolerance {tol:e} is below {MIN_TOL:e}"
        )));
    }
    if f.is_conditional() {
        if let Some(s) = singular_points(f).into_iter().find(|s| s.contains(z)) {
            return Err(Error::Singular {
                family: f.to_string(),
                z,
                kind: s.kind,
            });
        }
        conditional(f, z, tol)
    } else {
        absolute(f, z, tol)
    }
}

fn absolute(f: &SumFamily, z: f64, tol: f64) -> Result<OracleReport> {
    let cap = if f.power() == 2 { CAP_P2 } else { CAP_HIGHER };
    let gap = phase_gap(f, z);
    let k0 = first_index(f);
    let mut acc = NeumaierSum::new();
    let mut done = 0u64;
    let mut target = START_ABSOLUTE;
    let mut bound;
    loop {
        for k in k0 + done..k0 + target {
            acc.add(term(f, z, k));
        }
        done = target;
        bound = tail_bound(f, done, gap);
        if bound <= tol || done >= cap {
            break;
        }
        target = (done * 2).min(cap);
    }
    if bound > tol {
        return Err(Error::ToleranceNotReached {
            tol,
            terms: done,
            tail_bound: bound,
        });
    }
    Ok(OracleReport {
        value: acc.value(),
        terms_used: done,
        tail_bound: bound,
        mode: OracleMode::Absolute,
    })
}

fn conditional(f: &SumFamily, z: f64, tol: f64) -> Result<OracleReport> {
    let k0 = first_index(f);
    let mut n = START_CONDITIONAL;
    loop {
        let half = n / 2;
        let mut full = NeumaierSum::new();
        let mut short = NeumaierSum::new();
        for j in 0..n {
            let t = term(f, z, k0 + j);
            full.add(t * taper(j, n));
            if j < half {
                short.add(t * taper(j, half));
            }
        }
        let est = (full.value() - short.value()).abs();
        if est <= tol {
            return Ok(OracleReport {
                value: full.value(),
                terms_used: n,
                tail_bound: est,
                mode: OracleMode::AveragedConditional,
            });
        }
        if n >= CAP_CONDITIONAL {
            return Err(Error::ToleranceNotReached {
                tol,
                terms: n,
                tail_bound: est,
            });
        }
        n *= 2;
    }
}

/// Agreement threshold between a closed form and the oracle report.
pub fn agreement_threshold(f: &SumFamily, report: &OracleReport, tol: f64) -> f64 {
    if f.is_conditional() {
        tol.max(CONDITIONAL_TOL)
    } else {
        tol.max(report.tail_bound)
    }
}

/// Outcome of comparing two candidate closed forms at one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Both,
    OnlyA,
    OnlyB,
    Neither,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Both => "both",
            Verdict::OnlyA => "only-a",
            Verdict::OnlyB => "only-b",
            Verdict::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformanceRow {
    pub z: f64,
    pub claim_a: f64,
    pub claim_b: f64,
    pub oracle: f64,
    pub diff_a: f64,
    pub diff_b: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub family: String,
    pub rows: Vec<ConformanceRow>,
}

impl ConformanceReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }

    /// True when claim A matches the oracle everywhere.
    pub fn a_holds(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.verdict, Verdict::Both | Verdict::OnlyA))
    }

    /// True when claim B matches the oracle everywhere.
    pub fn b_holds(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.verdict, Verdict::Both | Verdict::OnlyB))
    }
}

/// Compares two candidate evaluators of `f` against the oracle on `grid`.
pub fn arbitrate<A, B>(
    claim_a: A,
    claim_b: B,
    f: &SumFamily,
    grid: &[f64],
    tol: f64,
) -> Result<ConformanceReport>
where
    A: Fn(f64) -> Result<f64>,
    B: Fn(f64) -> Result<f64>,
{
    let mut rows = Vec::with_capacity(grid.len());
    for &z in grid {
        let report = oracle_eval(f, z, tol)?;
        let a = claim_a(z)?;
        let b = claim_b(z)?;
        let threshold = agreement_threshold(f, &report, tol);
        let diff_a = (a - report.value).abs();
        let diff_b = (b - report.value).abs();
        let verdict = match (diff_a <= threshold, diff_b <= threshold) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::OnlyA,
            (false, true) => Verdict::OnlyB,
            (false, false) => Verdict::Neither,
        };
        rows.push(ConformanceRow {
            z,
            claim_a: a,
            claim_b: b,
            oracle: report.value,
            diff_a,
            diff_b,
            threshold,
            verdict,
        });
    }
    Ok(ConformanceReport {
        family: f.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(code: &str, n: u32) -> SumFamily {
        SumFamily::parse(code, n).unwrap()
    }

    #[test]
    fn two_terms_of_c1() {
        let v = partial_sum(&fam("C", 1), 0.0, 2);
        assert!((v + 3.0 / (4.0 * PI * PI)).abs() < 1e-16);
    }

    #[test]
    fn zeta_two_partial_sums() {
        let v = partial_sum(&fam("tC", 1), 0.0, 1_000_000);
        assert!((v - 1.0 / 6.0).abs() < 1e-6);
    }

    #[test]
    fn known_constants() {
        for (n, want) in [(1, -1.0 / 12.0), (2, -7.0 / 720.0), (3, -31.0 / 30240.0)] {
            let r = oracle_eval(&fam("C", n), 0.0, 1e-8).unwrap();
            assert_eq!(r.mode, OracleMode::Absolute);
            assert!((r.value - want).abs() <= 1e-8, "C_{n}: {}", r.value);
            assert!(r.tail_bound <= 1e-8);
        }
    }

    #[test]
    fn sawtooth() {
        let r = oracle_eval(&fam("S", 0), 0.3, 1e-6).unwrap();
        assert_eq!(r.mode, OracleMode::AveragedConditional);
        assert!((r.value + 0.3).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn divergent_order_zero_sums() {
        let r = oracle_eval(&fam("tC", 0), 0.3, 1e-6).unwrap();
        assert!((r.value + 0.5).abs() < 1e-6);
        let r = oracle_eval(&fam("Sp", 0), 0.2, 1e-6).unwrap();
        assert!((r.value + 0.5 * (0.2 * PI).tan()).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(oracle_eval(&fam("C", 1), 0.0, 1e-12).is_err());
        assert!(matches!(
            oracle_eval(&fam("S", 0), 0.5, 1e-6),
            Err(Error::Singular { .. })
        ));
        assert!(oracle_eval(&fam("C", 1), f64::INFINITY, 1e-8).is_err());
    }

    #[test]
    fn tail_bound_is_honest() {
        let f = fam("Sp", 1);
        let r = oracle_eval(&f, 0.37, 1e-9).unwrap();
        let far = partial_sum(&f, 0.37, 4 * r.terms_used);
        assert!((far - r.value).abs() <= 2e-9);
    }

    #[test]
    fn phase_is_reduced_exactly() {
        // sin(2 pi k z) for integer z must vanish for every k
        let f = fam("tS", 1);
        for k in [1u64, 1000, 123_456_789] {
            assert_eq!(term(&f, 7.0, k), 0.0);
        }
        let a = term(&f, 0.3, 1_000_001);
        let b = term(&f, 100.3, 1_000_001);
        assert!((a - b).abs() < 1e-18);
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn reflexive_arbitration() {
        let f = fam("C", 1);
        let eval = |z| crate::sums::eval(&f, z).map(|r| r.value);
        let grid = [-0.4, -0.1, 0.2, 0.45];
        let rep = arbitrate(eval, eval, &f, &grid, 1e-8).unwrap();
        assert_eq!(rep.count(Verdict::Both), grid.len());
    }
}
