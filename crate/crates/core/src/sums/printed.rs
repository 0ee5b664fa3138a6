//! Closed forms written out for particular orders, plus a few displayed
//! formulas kept verbatim so they can be checked against the series.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::eval::EvalResult;
use super::family::{IndexKind, SumFamily, Trig};
use crate::bracket::{centered_unchecked, parity_sign, sincos_pi};
use crate::coeffs::{c_table, to_f64};
use crate::error::Result;
use crate::polylog::{li_on_circle, LiValue, UnitCirclePoint};

const EPS: f64 = f64::EPSILON;

fn quarter_brackets(z: f64) -> (f64, f64) {
    let r = centered_unchecked(z);
    (centered_unchecked(r + 0.25), centered_unchecked(r - 0.25))
}

/// `bSp_1(z) = (1/2)[a^2 - b^2]` with `a = <z+1/4>`, `b = <z-1/4>`.
pub(crate) fn bold_sp1(z: f64) -> EvalResult {
    let (a, b) = quarter_brackets(z);
    let v = 0.5 * (a * a - b * b);
    EvalResult::elementary(v, 0.5)
}

/// `bSp_2(z) = (1/6)[a^2(1/2 - a^2) - b^2(1/2 - b^2)]`.
pub(crate) fn bold_sp2(z: f64) -> EvalResult {
    let (a, b) = quarter_brackets(z);
    let g = |x: f64| x * x * (0.5 - x * x);
    EvalResult::elementary((g(a) - g(b)) / 6.0, 0.1)
}

/// `bCp_1(z) = (1/3)[a(1/4 - a^2) - b(1/4 - b^2)]`.
pub(crate) fn bold_cp1(z: f64) -> EvalResult {
    let (a, b) = quarter_brackets(z);
    let g = |x: f64| x * (0.25 - x * x);
    EvalResult::elementary((g(a) - g(b)) / 3.0, 0.2)
}

fn li2(turns: f64) -> Result<LiValue> {
    li_on_circle(2, UnitCirclePoint::from_turns(turns)?)
}

/// `(1/(2 pi^2)) [wa.0 Re A + wb.0 Re B + wa.1 Im A + wb.1 Im B]` for
/// `A = Li_2` at `u` turns and `B = Li_2` at `v` turns.
fn li2_form(u: f64, v: f64, wa: (f64, f64), wb: (f64, f64)) -> Result<EvalResult> {
    let a = li2(u)?;
    let b = li2(v)?;
    let scale = 0.5 / (PI * PI);
    let terms = [
        wa.0 * a.real_part,
        wb.0 * b.real_part,
        wa.1 * a.imag_part,
        wb.1 * b.imag_part,
    ];
    let value = scale * terms.iter().sum::<f64>();
    let weight = wa.0.abs() + wa.1.abs() + wb.0.abs() + wb.1.abs();
    let bound = scale * weight * (a.error_bound + b.error_bound)
        + 4.0 * EPS * scale * terms.iter().map(|t| t.abs()).sum::<f64>();
    Ok(EvalResult::polylog(value, bound))
}

/// Explicit forms for the P/Q sums that have them; `None` sends the caller
/// to the reduction onto odd-index families.
pub(crate) fn pq_closed_form(f: &SumFamily, z: f64) -> Result<Option<EvalResult>> {
    debug_assert_eq!(f.index(), IndexKind::Modified);
    // the forms mix e^(pi i z) with sin/cos(pi z), so reduce by whole periods of 2
    let z = z - 2.0 * (0.5 * z).round();
    let (s, c) = sincos_pi(z);
    // e^(pi i z) sits at z/2 turns, i e^(pi i z) a quarter turn further
    let h = 0.5 * z;
    let r = match (f.alternating(), f.trig(), f.primed(), f.order()) {
        (true, Trig::Cos, false, 1) => li2_form(0.25 - h, 0.25 + h, (s, c), (-s, c))?,
        (true, Trig::Sin, true, 1) => li2_form(h + 0.25, h - 0.25, (-c, -s), (c, s))?,
        (true, Trig::Cos, true, 0) => {
            let v = 0.25 * parity_sign(z + 0.5) * c + s * (c / (1.0 - s)).abs().ln() / (2.0 * PI);
            EvalResult::elementary(v, 1.0 / c.abs().max(EPS))
        }
        (false, Trig::Sin, false, 0) => {
            let (s2, c2) = sincos_pi(h);
            let v = 0.25 * parity_sign(z) * c - s * (c2 / s2).abs().ln() / (2.0 * PI);
            EvalResult::elementary(v, 1.0 / s.abs().max(EPS))
        }
        (false, Trig::Cos, false, 1) => li2_form(h, h + 0.5, (c, s), (-c, -s))?,
        (false, Trig::Cos, true, 0) => {
            let (s2, c2) = sincos_pi(h);
            let v = 0.25 * s.abs() + c * (c2 / s2).abs().ln() / (2.0 * PI);
            EvalResult::elementary(v, 1.0 / s.abs().max(EPS))
        }
        (false, Trig::Sin, true, 1) => li2_form(h, h + 0.5, (-s, c), (s, -c))?,
        _ => return Ok(None),
    };
    Ok(Some(r))
}

/// `P_0(z) = -(1/pi) Im{e^(pi i z) arctan(e^(-pi i z))}` with the principal
/// branch of arctan.
pub fn p0_arctan(z: f64) -> f64 {
    let (s, c) = sincos_pi(z);
    let w = Complex64::new(c, s);
    -(w * w.conj().atan()).im / PI
}

/// The displayed closed form `2 sum_{i=1}^{n-1} c_i(n)/(2i+1) [<z>^(2i) - 4^(-i)]`
/// for the alternating sine sum, evaluated exactly as written.
pub fn s_displayed(n: u32, z: f64) -> Result<f64> {
    let c = c_table(n)?;
    let u = centered_unchecked(z);
    let mut v = 0.0;
    for i in 1..n as usize {
        let ci = c.get(i).map(to_f64).unwrap_or(0.0);
        v += ci / (2 * i + 1) as f64 * (u.powi(2 * i as i32) - 0.25f64.powi(i as i32));
    }
    Ok(2.0 * v)
}

/// `Q'_0` with the sign of the logarithmic term as displayed (negative).
pub fn qp0_displayed(z: f64) -> f64 {
    let (s, c) = sincos_pi(z);
    0.25 * parity_sign(z + 0.5) * c - s * (c / (1.0 - s)).abs().ln() / (2.0 * PI)
}

/// `Sp_n` read as `Im Li_2n(-e^(-2 pi i z)) / pi^2n`.
pub fn sp_conjugate_reading(n: u32, z: f64) -> Result<f64> {
    let t = -centered_unchecked(z) + 0.5;
    let v = li_on_circle(2 * n, UnitCirclePoint::from_turns(t)?)?;
    Ok(v.imag_part / PI.powi(2 * n as i32))
}
