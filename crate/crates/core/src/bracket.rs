//! Fractional part `{z}` and centered fractional part `<z>`.
//!
//! Every polynomial closed form in this crate is a polynomial in `<z - s>`
//! for a small rational shift `s`, so the reduction here is written to be
//! exact in binary floating point: `centered` never rounds.
//!
//! At exact half-integers `<z>` takes the left endpoint `-1/2`. The closed
//! forms built on it therefore return one-sided values at jump points, while
//! the series themselves converge to the midpoint there; callers that care
//! (the verifier, the oracle comparison) exclude jump points.

use crate::error::{ensure_finite, Result};

/// A value of `<z>`, always in `[-1/2, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CenteredFrac(f64);

impl CenteredFrac {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A value of `{z}`, always in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracPart(f64);

impl FracPart {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `{z} = z - floor(z)`.
pub fn frac(z: f64) -> Result<FracPart> {
    ensure_finite(z)?;
    Ok(FracPart(frac_unchecked(z)))
}

/// `<z> = z - floor(z + 1/2)`.
pub fn centered(z: f64) -> Result<CenteredFrac> {
    ensure_finite(z)?;
    Ok(CenteredFrac(centered_unchecked(z)))
}

/// Largest double strictly below one.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

pub(crate) fn frac_unchecked(z: f64) -> f64 {
    let r = z - z.floor();
    // tiny negative z: 1 + z rounds up to 1
    if r >= 1.0 {
        BELOW_ONE
    } else {
        r
    }
}

pub(crate) fn centered_unchecked(z: f64) -> f64 {
    // z - round(z) is exact: the result is a multiple of ulp(z) bounded by 1/2.
    let r = z - z.round();
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// `<z - s>` computed as `<<z> - s>` so large `z` is reduced exactly first.
pub(crate) fn centered_shifted(z: f64, shift: f64) -> f64 {
    if shift == 0.0 {
        centered_unchecked(z)
    } else {
        centered_unchecked(centered_unchecked(z) - shift)
    }
}

/// `(sin(pi x), cos(pi x))` with exact argument reduction; gives exact zeros
/// at integers and half-integers.
pub(crate) fn sincos_pi(x: f64) -> (f64, f64) {
    let r = centered_unchecked(x);
    let n = x - r;
    let odd = (n * 0.5).fract() != 0.0;
    let (s, c) = if r > 0.25 {
        let t = std::f64::consts::PI * (0.5 - r);
        (t.cos(), t.sin())
    } else if r < -0.25 {
        let t = std::f64::consts::PI * (0.5 + r);
        (-t.cos(), t.sin())
    } else {
        (std::f64::consts::PI * r).sin_cos()
    };
    if odd {
        (-s, -c)
    } else {
        (s, c)
    }
}

/// `floor(x)` returned as a sign `(-1)^floor(x)`.
pub(crate) fn parity_sign(x: f64) -> f64 {
    if (x.floor() * 0.5).fract() == 0.0 {
        1.0
    } else {
        -1.0
    }
}
