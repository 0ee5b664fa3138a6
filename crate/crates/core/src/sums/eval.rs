use std::f64::consts::PI;

use serde::Serialize;

use super::family::{IndexKind, SumFamily, Trig};
use super::printed;
use super::singular::hit;
use crate::bracket::{centered_unchecked, parity_sign, sincos_pi};
use crate::coeffs::{shared_poly_c, shared_poly_s};
use crate::error::{ensure_finite, Error, Result};
use crate::polylog::{li_on_circle, li_quarter_shift, LiValue, Sign, UnitCirclePoint};

const EPS: f64 = f64::EPSILON;

/// How a value was produced. Ordered from most to least exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalPath {
    Polynomial,
    Elementary,
    Polylog,
    Oracle,
}

impl EvalPath {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalPath::Polynomial => "polynomial",
            EvalPath::Elementary => "elementary",
            EvalPath::Polylog => "polylog",
            EvalPath::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for EvalPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub path: EvalPath,
    pub error_bound: f64,
}

impl EvalResult {
    fn polynomial((value, error_bound): (f64, f64)) -> Self {
        EvalResult {
            value,
            path: EvalPath::Polynomial,
            error_bound,
        }
    }

    /// `cond` is the magnitude of the derivative with respect to the reduced
    /// argument; the argument itself carries about one rounding error.
    pub(crate) fn elementary(value: f64, cond: f64) -> Self {
        EvalResult {
            value,
            path: EvalPath::Elementary,
            error_bound: 4.0 * EPS * (value.abs() + cond.abs()),
        }
    }

    pub(crate) fn polylog(value: f64, bound: f64) -> Self {
        EvalResult {
            value,
            path: EvalPath::Polylog,
            error_bound: bound + 2.0 * EPS * value.abs(),
        }
    }

    /// Linear combination `sum c_i r_i`; coefficients are taken as exact to
    /// within one rounding each.
    pub(crate) fn combine(terms: &[(f64, EvalResult)]) -> Self {
        let mut value = 0.0;
        let mut bound = 0.0;
        let mut scale = 0.0;
        let mut path = EvalPath::Polynomial;
        for (c, r) in terms {
            value += c * r.value;
            bound += c.abs() * r.error_bound;
            scale += (c * r.value).abs();
            path = path.max(r.path);
        }
        EvalResult {
            value,
            path,
            error_bound: bound + 2.0 * EPS * (terms.len() as f64) * scale,
        }
    }
}

fn singular_check(f: &SumFamily, z: f64) -> Result<()> {
    ensure_finite(z)?;
    match hit(f, z) {
        Some(s) => Err(Error::Singular {
            family: f.to_string(),
            z,
            kind: s.kind,
        }),
        None => Ok(()),
    }
}

/// Value of the series `f` at `z` from its closed form.
pub fn eval(f: &SumFamily, z: f64) -> Result<EvalResult> {
    singular_check(f, z)?;
    direct(f, z)
}

/// Value of `f` at `z` through an interrelation with another family rather
/// than its own closed form:
///
/// * `tX_n(z) = X_n(z - 1/2)` and, read backwards, `X_n(z) = tX_n(z + 1/2)`;
/// * the odd-index identities `tbS_n(z) = bCp_n(z - 1/4)`,
///   `tbC_n(z) = bSp_n(z + 1/4)`, `tbSp_n(z) = bC_n(z - 1/4)`,
///   `tbCp_n(z) = bS_n(z + 1/4)` (the alternating ones are evaluated from the
///   other side, against the odd-term decomposition of the tilde families);
/// * the P/Q sums through `cos(pi z)` / `sin(pi z)` combinations of the
///   odd-index families at `z/2`.
pub fn eval_via_relation(f: &SumFamily, z: f64) -> Result<EvalResult> {
    singular_check(f, z)?;
    let r = centered_unchecked(z);
    match f.index() {
        IndexKind::Natural => {
            let shift = if f.alternating() { 0.5 } else { -0.5 };
            eval(&f.toggled(), r + shift)
        }
        IndexKind::Odd => {
            let partner = odd_partner(f);
            let shift = odd_shift(f);
            if f.alternating() {
                singular_check(&partner, r + shift)?;
                tilde_odd_decomposition(&partner, r + shift)
            } else {
                eval(&partner, r + shift)
            }
        }
        IndexKind::Modified => pq_reduction(f, z, eval),
    }
}

// tbS <-> bCp, tbC <-> bSp, tbSp <-> bC, tbCp <-> bS
fn odd_partner(f: &SumFamily) -> SumFamily {
    SumFamily::unchecked(
        IndexKind::Odd,
        !f.alternating(),
        other(f.trig()),
        !f.primed(),
        f.order(),
    )
}

// For a tilde family `s` with tilde(z) = partner(z + s); for an alternating
// family `-s` of its partner, so that again X(z) = partner(z + shift).
fn odd_shift(f: &SumFamily) -> f64 {
    // from the tilde side: tbS and tbSp use z - 1/4, tbC and tbCp use z + 1/4
    let tilde_trig = if f.alternating() {
        other(f.trig())
    } else {
        f.trig()
    };
    let s = match tilde_trig {
        Trig::Sin => -0.25,
        Trig::Cos => 0.25,
    };
    if f.alternating() {
        -s
    } else {
        s
    }
}

fn other(t: Trig) -> Trig {
    match t {
        Trig::Sin => Trig::Cos,
        Trig::Cos => Trig::Sin,
    }
}

fn direct(f: &SumFamily, z: f64) -> Result<EvalResult> {
    match f.index() {
        IndexKind::Natural => natural(f, z),
        IndexKind::Odd if f.alternating() => odd_alternating(f, z),
        IndexKind::Odd => tilde_odd_decomposition(f, z),
        IndexKind::Modified => match printed::pq_closed_form(f, z)? {
            Some(r) => Ok(r),
            None => pq_reduction(f, z, |g, w| {
                singular_check(g, w)?;
                eval_via_relation(g, w)
            }),
        },
    }
}

fn li(a: u32, turns: f64) -> Result<LiValue> {
    li_on_circle(a, UnitCirclePoint::from_turns(turns)?)
}

fn natural(f: &SumFamily, z: f64) -> Result<EvalResult> {
    let n = f.order();
    let alt = f.alternating();
    // alternating sums see the circle point -e^(2 pi i z) = e^(2 pi i (z + 1/2))
    let turns = if alt { centered_unchecked(z) + 0.5 } else { z };
    let shift = if alt { 0.0 } else { 0.5 };
    match (f.trig(), f.primed(), n) {
        (Trig::Sin, false, _) => {
            let p = shared_poly_s(n)?;
            Ok(EvalResult::polynomial(
                p.eval_extra_shift_with_bound(z, shift),
            ))
        }
        (Trig::Cos, false, 0) => Ok(EvalResult::elementary(-0.5, 0.0)),
        (Trig::Cos, false, _) => {
            let p = shared_poly_c(n)?;
            Ok(EvalResult::polynomial(
                p.eval_extra_shift_with_bound(z, shift),
            ))
        }
        (Trig::Sin, true, 0) => {
            let (s, c) = sincos_pi(z);
            if alt {
                let t = s / c;
                Ok(EvalResult::elementary(-0.5 * t, 0.5 * (1.0 + t * t)))
            } else {
                let t = c / s;
                Ok(EvalResult::elementary(0.5 * t, 0.5 * (1.0 + t * t)))
            }
        }
        (Trig::Sin, true, _) => {
            let v = li(2 * n, turns)?;
            let scale = PI.powi(-2 * n as i32);
            Ok(EvalResult::polylog(
                v.imag_part * scale,
                v.error_bound * scale,
            ))
        }
        (Trig::Cos, true, 0) => {
            let (s, c) = sincos_pi(z);
            let (x, cond) = if alt { (c, s / c) } else { (s, c / s) };
            Ok(EvalResult::elementary(
                -(2.0 * x.abs()).ln() / PI,
                cond.abs(),
            ))
        }
        (Trig::Cos, true, _) => {
            let v = li(2 * n + 1, turns)?;
            let scale = PI.powi(-(2 * n as i32 + 1));
            Ok(EvalResult::polylog(
                v.real_part * scale,
                v.error_bound * scale,
            ))
        }
    }
}

fn odd_alternating(f: &SumFamily, z: f64) -> Result<EvalResult> {
    let n = f.order();
    let r = centered_unchecked(z);
    match (f.trig(), f.primed(), n) {
        (Trig::Sin, false, 0) => {
            let (s, c) = sincos_pi(r + 0.25);
            let v = (s / c).abs().ln() / (2.0 * PI);
            Ok(EvalResult::elementary(v, 1.0 / (s * c).abs()))
        }
        (Trig::Sin, false, _) => {
            let a = 2 * n + 1;
            let plus = li_quarter_shift(a, r, Sign::Plus)?;
            let minus = li_quarter_shift(a, r, Sign::Minus)?;
            let scale = 0.5 * PI.powi(-(a as i32));
            Ok(EvalResult::polylog(
                -scale * (plus.real_part - minus.real_part),
                scale * (plus.error_bound + minus.error_bound),
            ))
        }
        (Trig::Cos, false, _) => {
            let a = 2 * n;
            let plus = li_quarter_shift(a, r, Sign::Plus)?;
            let minus = li_quarter_shift(a, r, Sign::Minus)?;
            let scale = 0.5 * PI.powi(-(a as i32));
            Ok(EvalResult::polylog(
                scale * (plus.imag_part - minus.imag_part),
                scale * (plus.error_bound + minus.error_bound),
            ))
        }
        (Trig::Sin, true, 1) => Ok(printed::bold_sp1(r)),
        (Trig::Sin, true, 2) => Ok(printed::bold_sp2(r)),
        (Trig::Sin, true, _) => {
            // (1/2) [C_n(<z + 1/4>) - C_n(<z - 1/4>)]
            let p = shared_poly_c(n)?;
            let a = EvalResult::polynomial(p.eval_extra_shift_with_bound(r, -0.25));
            let b = EvalResult::polynomial(p.eval_extra_shift_with_bound(r, 0.25));
            Ok(EvalResult::combine(&[(0.5, a), (-0.5, b)]))
        }
        (Trig::Cos, true, 0) => Ok(EvalResult::elementary(
            0.25 * parity_sign(2.0 * r + 0.5),
            0.0,
        )),
        (Trig::Cos, true, 1) => Ok(printed::bold_cp1(r)),
        (Trig::Cos, true, _) => {
            // (1/2) [S_n(<z - 1/4>) - S_n(<z + 1/4>)]
            let p = shared_poly_s(n)?;
            let a = EvalResult::polynomial(p.eval_extra_shift_with_bound(r, 0.25));
            let b = EvalResult::polynomial(p.eval_extra_shift_with_bound(r, -0.25));
            Ok(EvalResult::combine(&[(0.5, a), (-0.5, b)]))
        }
    }
}

/// Odd terms of a non-alternating natural series:
/// `tbX_n(z) = tX_n(z) - 2^(-p) tX_n(2z)`.
fn tilde_odd_decomposition(f: &SumFamily, z: f64) -> Result<EvalResult> {
    let natural = f.with_index(IndexKind::Natural);
    let r = centered_unchecked(z);
    let all = direct(&natural, r)?;
    let even = direct(&natural, 2.0 * r)?;
    let weight = 0.5f64.powi(f.power() as i32);
    Ok(EvalResult::combine(&[(1.0, all), (-weight, even)]))
}

/// `P = cos(pi z) B(z/2) - sin(pi z) B'(z/2)`, `Q = cos(pi z) B(z/2) + sin(pi z) B'(z/2)`,
/// where `B` is the odd-index family with the same trig/prime and `B'` its
/// partner with trig and prime swapped.
pub(crate) fn pq_reduction(
    f: &SumFamily,
    z: f64,
    bold: impl Fn(&SumFamily, f64) -> Result<EvalResult>,
) -> Result<EvalResult> {
    let same = SumFamily::unchecked(
        IndexKind::Odd,
        f.alternating(),
        f.trig(),
        f.primed(),
        f.order(),
    );
    let swap = SumFamily::unchecked(
        IndexKind::Odd,
        f.alternating(),
        other(f.trig()),
        !f.primed(),
        f.order(),
    );
    let (s, c) = sincos_pi(z);
    let w = 0.5 * z;
    let a = if c == 0.0 {
        EvalResult::polynomial((0.0, 0.0))
    } else {
        bold(&same, w)?
    };
    let b = if s == 0.0 {
        EvalResult::polynomial((0.0, 0.0))
    } else {
        bold(&swap, w)?
    };
    let sign = match f.trig() {
        Trig::Sin => -1.0,
        Trig::Cos => 1.0,
    };
    Ok(EvalResult::combine(&[(c, a), (sign * s, b)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(code: &str, n: u32) -> SumFamily {
        SumFamily::parse(code, n).unwrap()
    }

    fn v(code: &str, n: u32, z: f64) -> f64 {
        eval(&fam(code, n), z).unwrap().value
    }

    #[test]
    fn printed_examples() {
        assert!((v("S", 0, 0.3) + 0.3).abs() < 1e-16);
        assert!((v("tC", 1, 0.25) - (0.0625 - 1.0 / 12.0)).abs() < 1e-16);
        assert_eq!(v("bCp", 0, 0.1), 0.25);
        assert!((v("Cp", 0, 0.0) + 2f64.ln() / PI).abs() < 1e-16);
        assert!((v("tQp", 0, 0.5) - 0.25).abs() < 1e-16);
        assert_eq!(v("S", 1, 0.0), 0.0);
        let r = eval(&fam("C", 1), 0.25).unwrap();
        assert_eq!(r.path, EvalPath::Polynomial);
        assert!(r.error_bound <= 1e-14 * (1.0 + r.value.abs()));
    }

    #[test]
    fn relation_examples() {
        let r = eval_via_relation(&fam("tS", 0), 0.3).unwrap();
        assert!((r.value - 0.2).abs() < 1e-15);
        let r = eval_via_relation(&fam("tbCp", 0), 0.25).unwrap();
        assert!(r.value.abs() < 1e-15);
        let r = eval_via_relation(&fam("Qp", 0), 0.0).unwrap();
        assert!((r.value - 0.25).abs() < 1e-15);
    }

    #[test]
    fn singular_points_raise() {
        for (code, n, z) in [
            ("Sp", 0, 0.5),
            ("Cp", 0, -0.5),
            ("tSp", 0, 1.0),
            ("tCp", 0, 0.0),
            ("tC", 0, 2.0),
            ("bS", 0, 0.25),
            ("bCp", 0, -0.25),
            ("S", 0, 0.5),
            ("P", 0, 0.5),
        ] {
            let e = eval(&fam(code, n), z).unwrap_err();
            assert!(
                matches!(e, Error::Singular { .. }),
                "{code}_{n} at {z}: {e}"
            );
        }
        assert!(eval(&fam("S", 1), 0.5).is_ok());
        assert!(eval(&fam("C", 1), f64::NAN).is_err());
    }

    #[test]
    fn two_paths_agree_on_a_few_points() {
        for code in super::super::family::SumFamily::CODES {
            for n in 0..3 {
                let Ok(f) = SumFamily::parse(code, n) else {
                    continue;
                };
                for z in [-0.83, -0.11, 0.07, 0.36, 0.61] {
                    let a = eval(&f, z).unwrap();
                    let b = eval_via_relation(&f, z).unwrap();
                    assert!(
                        (a.value - b.value).abs() < 1e-10,
                        "{f} at {z}: {} vs {}",
                        a.value,
                        b.value
                    );
                }
            }
        }
    }
}
