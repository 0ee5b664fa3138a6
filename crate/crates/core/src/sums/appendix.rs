use super::eval::eval;
use super::family::SumFamily;
use crate::bracket::centered_unchecked;
use crate::error::{Error, Result};
use crate::polylog::Sign;

/// `(Re, Im)` of `Li_a(e^(2 pi i (z +- 1/4))) / pi^a` assembled from the sums:
/// the even terms of the polylogarithm give a natural family at `2z`, the
/// odd terms an odd-index family at `z`.
pub fn quarter_shift_parts(a: u32, z: f64, sign: Sign) -> Result<(f64, f64)> {
    if a < 2 {
        return Err(Error::UnsupportedOrder {
            family: "Li quarter shift".into(),
            order: a,
            reason: "requires order >= 2",
        });
    }
    let n = a / 2;
    let sg = sign.value();
    let r = centered_unchecked(z);
    let at =
        |code: &str, w: f64| -> Result<f64> { Ok(eval(&SumFamily::parse(code, n)?, w)?.value) };
    let even = 0.5f64.powi(a as i32);
    if a.is_multiple_of(2) {
        let re = -sg * at("bSp", r)? + even * at("C", 2.0 * r)?;
        let im = even * at("Sp", 2.0 * r)? + sg * at("bC", r)?;
        Ok((re, im))
    } else {
        let re = -sg * at("bS", r)? + even * at("Cp", 2.0 * r)?;
        let im = even * at("S", 2.0 * r)? + sg * at("bCp", r)?;
        Ok((re, im))
    }
}
