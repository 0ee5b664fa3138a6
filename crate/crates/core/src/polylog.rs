//! Polylogarithms of integer order on the unit circle.
//!
//! For `w = exp(2 pi i t)` one component of `Li_a(w)` is a bracket polynomial
//! in `<t - 1/2>`:
//!
//! * `Re Li_2n(w)   = pi^2n     C_n(t - 1/2)`
//! * `Im Li_2n+1(w) = pi^(2n+1) S_n(t - 1/2)`
//!
//! The other (Clausen-type) component has no such form and is summed from the
//! logarithmic expansion of `Li_m(e^mu)` around `mu = 0`,
//!
//! ```text
//! Li_m(e^mu) = mu^(m-1)/(m-1)! [H_(m-1) - ln(-mu)] + sum_{k != m-1} zeta(m-k) mu^k / k!
//! ```
//!
//! which converges for `|mu| < 2 pi`. With `mu = i theta` and `theta` reduced
//! to `[-pi, pi)` the ratio of successive terms is at most 1/4, and the
//! coefficients for `k > m` are exact Bernoulli rationals.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::bernoulli::{bernoulli, factorial, Rational};
use crate::bracket::{centered_unchecked, frac_unchecked, sincos_pi};
use crate::coeffs::{shared_poly_c, shared_poly_s, to_f64};
use crate::error::{ensure_finite, Error, Result};

/// Point `exp(2 pi i t)` on the unit circle, stored as turns `t` in `[0, 1)`.
///
/// Keeping the angle in turns lets callers with rational `z` hand over the
/// exact binary value; reductions by whole turns are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCirclePoint {
    turns: f64,
}

impl UnitCirclePoint {
    pub fn from_turns(t: f64) -> Result<Self> {
        ensure_finite(t)?;
        Ok(UnitCirclePoint {
            turns: frac_unchecked(t),
        })
    }

    pub fn from_theta(theta: f64) -> Result<Self> {
        ensure_finite(theta)?;
        Self::from_turns(theta / (2.0 * PI))
    }

    pub fn turns(self) -> f64 {
        self.turns
    }

    /// Angle in `[0, 2 pi)`.
    pub fn theta(self) -> f64 {
        2.0 * PI * self.turns
    }

    pub fn conj(self) -> Self {
        UnitCirclePoint {
            turns: frac_unchecked(-self.turns),
        }
    }
}

/// `Li_a` evaluated on the unit circle. `error_bound` bounds both components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiValue {
    pub real_part: f64,
    pub imag_part: f64,
    pub order: u32,
    pub error_bound: f64,
}

impl LiValue {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.real_part, self.imag_part)
    }
}

/// Direction of the quarter-turn offset in [`li_quarter_shift`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

const MAX_SERIES_TERMS: usize = 96;
const ROUNDING_ULPS: f64 = 4.0;

fn zeta_cache() -> &'static RwLock<HashMap<u32, f64>> {
    static C: OnceLock<RwLock<HashMap<u32, f64>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Riemann zeta at an integer `s >= 2`, by Euler-Maclaurin summation.
pub fn zeta(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!(
            "zeta({s}) is not finite or not needed"
        )));
    }
    if let Some(v) = zeta_cache().read().expect("zeta cache poisoned").get(&s) {
        return Ok(*v);
    }
    const N: u32 = 16;
    const J: u32 = 14;
    let sf = s as f64;
    let nf = N as f64;
    let mut acc = 0.0;
    for k in (1..N).rev() {
        acc += (k as f64).powf(-sf);
    }
    let mut tail = nf.powf(1.0 - sf) / (sf - 1.0) + 0.5 * nf.powf(-sf);
    // B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
    let mut rising = sf;
    for j in 1..=J {
        let b = to_f64(&(bernoulli(2 * j as usize)? / Rational::from_integer(factorial(2 * j))));
        tail += b * rising * nf.powf(-sf - 2.0 * j as f64 + 1.0);
        rising *= (sf + 2.0 * j as f64 - 1.0) * (sf + 2.0 * j as f64);
    }
    let v = acc + tail;
    zeta_cache()
        .write()
        .expect("zeta cache poisoned")
        .insert(s, v);
    Ok(v)
}

// zeta(m - k) / k! for k = 0..MAX_SERIES_TERMS; the k = m - 1 slot is unused.
fn series_coefficients(m: u32) -> Result<Arc<Vec<f64>>> {
    static C: OnceLock<RwLock<HashMap<u32, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("series cache poisoned").get(&m) {
        return Ok(v.clone());
    }
    let mut out = Vec::with_capacity(MAX_SERIES_TERMS);
    let mut inv_fact = 1.0;
    for k in 0..MAX_SERIES_TERMS as u32 {
        if k > 0 {
            inv_fact /= k as f64;
        }
        let c = if k + 1 < m {
            zeta(m - k)? * inv_fact
        } else if k + 1 == m {
            0.0
        } else if k == m {
            -0.5 * inv_fact
        } else {
            // zeta(-j) = -B_(j+1) / (j+1)
            let j = k - m;
            let b = bernoulli(j as usize + 1)?;
            if b.is_zero() {
                0.0
            } else {
                let d = Rational::from_integer(BigInt::from(j + 1) * factorial(k));
                -to_f64(&(b / d))
            }
        };
        out.push(c);
    }
    let out = Arc::new(out);
    cache
        .write()
        .expect("series cache poisoned")
        .insert(m, out.clone());
    Ok(out)
}

/// Both components of `Li_m(e^(i theta))`, `m >= 2`, from the logarithmic
/// expansion alone.
pub fn li_series(m: u32, p: UnitCirclePoint) -> Result<LiValue> {
    if m < 2 {
        return Err(Error::UnsupportedOrder {
            family: "Li".into(),
            order: m,
            reason: "the logarithmic expansion is used for orders >= 2",
        });
    }
    let theta = 2.0 * PI * centered_unchecked(p.turns);
    if theta == 0.0 {
        let z = zeta(m)?;
        return Ok(LiValue {
            real_part: z,
            imag_part: 0.0,
            order: m,
            error_bound: ROUNDING_ULPS * f64::EPSILON * z,
        });
    }
    let coeffs = series_coefficients(m)?;
    let mut re = 0.0;
    let mut im = 0.0;
    let mut magnitude = 0.0;
    let mut power = 1.0; // theta^k
    let mut truncation = f64::INFINITY;
    let mut last_nonzero = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        if k + 1 == m as usize {
            // (i theta)^(m-1)/(m-1)! * (H_(m-1) - ln|theta| + i pi/2 sgn(theta))
            let h: f64 = (1..m).map(|j| 1.0 / j as f64).sum();
            let scale = power / (1..m).map(|j| j as f64).product::<f64>();
            let ik = i_power(k);
            let log = Complex64::new(h - theta.abs().ln(), 0.5 * PI * theta.signum());
            let t = ik * scale * log;
            re += t.re;
            im += t.im;
            magnitude += t.norm();
        } else if c != 0.0 {
            let t = c * power;
            let ik = i_power(k);
            re += ik.re * t;
            im += ik.im * t;
            magnitude += t.abs();
            if k > m as usize + 1 {
                last_nonzero = t.abs();
                if last_nonzero < 1e-18 * magnitude {
                    // remaining terms shrink at least geometrically by 1/4 every two steps
                    truncation = last_nonzero * 4.0 / 3.0;
                    break;
                }
            }
        }
        power *= theta;
    }
    if truncation.is_infinite() {
        truncation = last_nonzero * 4.0 / 3.0;
    }
    Ok(LiValue {
        real_part: re,
        imag_part: im,
        order: m,
        error_bound: truncation + ROUNDING_ULPS * f64::EPSILON * magnitude,
    })
}

fn i_power(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `Li_a(e^(i theta))` for integer `a >= 1`.
///
/// The Bernoulli-type component (real for even `a`, imaginary for odd `a`)
/// comes from the exact bracket polynomial; the Clausen-type component from
/// [`li_series`]. `a = 1` uses `-ln(1 - w)` directly.
pub fn li_on_circle(a: u32, p: UnitCirclePoint) -> Result<LiValue> {
    let t = p.turns;
    match a {
        0 => Err(Error::UnsupportedOrder {
            family: "Li".into(),
            order: 0,
            reason: "orders below 1 are not supported",
        }),
        1 => {
            if t == 0.0 {
                return Err(Error::Singular {
                    family: "Li_1".into(),
                    z: 0.0,
                    kind: crate::error::SingularKind::Log,
                });
            }
            let (s, _) = sincos_pi(t);
            let re = -(2.0 * s.abs()).ln();
            let im = PI * (0.5 - t);
            Ok(LiValue {
                real_part: re,
                imag_part: im,
                order: 1,
                error_bound: ROUNDING_ULPS * f64::EPSILON * (re.abs() + im.abs() + 1.0),
            })
        }
        _ => {
            let series = li_series(a, p)?;
            let n = a / 2;
            let scale = PI.powi(a as i32);
            if a.is_multiple_of(2) {
                let (v, b) = shared_poly_c(n)?.eval_extra_shift_with_bound(t, 0.5);
                let re = scale * v;
                Ok(LiValue {
                    real_part: re,
                    imag_part: series.imag_part,
                    order: a,
                    error_bound: series.error_bound.max(scale * b + f64::EPSILON * re.abs()),
                })
            } else {
                let (v, b) = shared_poly_s(n)?.eval_extra_shift_with_bound(t, 0.5);
                let im = scale * v;
                Ok(LiValue {
                    real_part: series.real_part,
                    imag_part: im,
                    order: a,
                    error_bound: series.error_bound.max(scale * b + f64::EPSILON * im.abs()),
                })
            }
        }
    }
}

/// `Re Li_2n(e^(2 pi i z)) = pi^2n C_n(z - 1/2)`; `z` in turns.
pub fn re_li_even_as_poly(n: u32, z: f64) -> Result<f64> {
    ensure_finite(z)?;
    let p = shared_poly_c(n)?;
    Ok(PI.powi(2 * n as i32) * p.eval_extra_shift_with_bound(z, 0.5).0)
}

/// `Im Li_(2n+1)(-e^(2 pi i z)) = pi^(2n+1) S_n(z)`; `z` in turns.
///
/// For the conjugate point `-e^(-2 pi i z)` negate the result (equivalently
/// pass `-z`).
pub fn im_li_odd_as_poly(n: u32, z: f64) -> Result<f64> {
    ensure_finite(z)?;
    let p = shared_poly_s(n)?;
    Ok(PI.powi(2 * n as i32 + 1) * p.eval(z))
}

/// `Li_a(e^(2 pi i (z +- 1/4)))`.
pub fn li_quarter_shift(a: u32, z: f64, sign: Sign) -> Result<LiValue> {
    ensure_finite(z)?;
    if a < 2 {
        return Err(Error::UnsupportedOrder {
            family: "Li quarter shift".into(),
            order: a,
            reason: "requires order >= 2",
        });
    }
    let t = centered_unchecked(z) + 0.25 * sign.value();
    li_on_circle(a, UnitCirclePoint::from_turns(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

    // direct sum of the conjugate-symmetric series, for moderate orders only
    fn direct(a: u32, theta: f64) -> (f64, f64) {
        let n = 200_000;
        let (mut re, mut im) = (0.0, 0.0);
        for k in (1..=n).rev() {
            let kf = k as f64;
            let w = kf.powi(-(a as i32));
            re += (kf * theta).cos() * w;
            im += (kf * theta).sin() * w;
        }
        (re, im)
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(3).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-15);
        assert!((zeta(5).unwrap() - 1.036_927_755_143_37).abs() < 1e-15);
        assert!(zeta(1).is_err());
    }

    #[test]
    fn dilog_special_points() {
        let v = li_on_circle(2, UnitCirclePoint::from_theta(0.0).unwrap()).unwrap();
        assert!((v.real_part - PI * PI / 6.0).abs() < 1e-14);
        assert_eq!(v.imag_part, 0.0);
        let v = li_on_circle(2, UnitCirclePoint::from_turns(0.5).unwrap()).unwrap();
        assert!((v.real_part + PI * PI / 12.0).abs() < 1e-14);
        assert!(v.imag_part.abs() < 1e-15);
        let v = li_on_circle(2, UnitCirclePoint::from_turns(0.25).unwrap()).unwrap();
        assert!((v.imag_part - CATALAN).abs() < 1e-14);
        assert!((v.real_part + PI * PI / 48.0).abs() < 1e-14);
        assert!(v.error_bound <= 1e-12);
    }

    #[test]
    fn series_matches_polynomial_component() {
        for a in 2..=7 {
            for t in [0.03, 0.2, 0.37, 0.5, 0.61, 0.9] {
                let p = UnitCirclePoint::from_turns(t).unwrap();
                let s = li_series(a, p).unwrap();
                let v = li_on_circle(a, p).unwrap();
                assert!(
                    (s.real_part - v.real_part).abs() < 1e-13
                        && (s.imag_part - v.imag_part).abs() < 1e-13,
                    "a={a} t={t}: {s:?} vs {v:?}"
                );
            }
        }
    }

    #[test]
    fn clausen_component_matches_direct_sum() {
        for a in [3u32, 4, 5] {
            for theta in [0.4, 1.7, 3.0, 5.5] {
                let v = li_on_circle(a, UnitCirclePoint::from_theta(theta).unwrap()).unwrap();
                let (re, im) = direct(a, theta);
                let tail = 1.0 / ((a - 1) as f64 * 200_000f64.powi(a as i32 - 1));
                assert!(
                    (v.real_part - re).abs() < 1e-12 + tail,
                    "a={a} theta={theta}"
                );
                assert!(
                    (v.imag_part - im).abs() < 1e-12 + tail,
                    "a={a} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn li1_closed_form() {
        let v = li_on_circle(1, UnitCirclePoint::from_turns(0.5).unwrap()).unwrap();
        assert!((v.real_part + 2f64.ln()).abs() < 1e-15);
        assert!(v.imag_part.abs() < 1e-15);
        assert!(matches!(
            li_on_circle(1, UnitCirclePoint::from_turns(0.0).unwrap()),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            li_on_circle(0, UnitCirclePoint::from_turns(0.1).unwrap()),
            Err(Error::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn conjugation() {
        for a in 1..=6 {
            for t in [0.1, 0.33, 0.72] {
                let p = UnitCirclePoint::from_turns(t).unwrap();
                let v = li_on_circle(a, p).unwrap();
                let w = li_on_circle(a, p.conj()).unwrap();
                assert!((v.real_part - w.real_part).abs() < 1e-13);
                assert!((v.imag_part + w.imag_part).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn polynomial_fast_paths() {
        assert!((re_li_even_as_poly(1, 0.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((re_li_even_as_poly(1, 0.5).unwrap() + PI * PI / 12.0).abs() < 1e-14);
        assert!((im_li_odd_as_poly(0, 0.25).unwrap() + PI / 4.0).abs() < 1e-15);
        assert_eq!(im_li_odd_as_poly(1, 0.0).unwrap(), 0.0);
        let expected = PI.powi(3) * (2.0 / 3.0 * 0.3f64.powi(3) - 0.3 / 6.0);
        assert!((im_li_odd_as_poly(1, 0.3).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn quarter_shift_examples() {
        let v = li_quarter_shift(2, 0.0, Sign::Plus).unwrap();
        assert!((v.real_part + PI * PI / 48.0).abs() < 1e-14);
        assert!((v.imag_part - CATALAN).abs() < 1e-14);
        let v = li_quarter_shift(2, 0.25, Sign::Minus).unwrap();
        assert!((v.real_part - PI * PI / 6.0).abs() < 1e-14);
        let v = li_quarter_shift(3, 0.0, Sign::Plus).unwrap();
        assert!((v.imag_part - PI.powi(3) / 32.0).abs() < 1e-14);
    }
}
