//! Exact bracket polynomials for the even-summand alternating families.
//!
//! `C_n(z) = sum_i c_i(n) <z>^(2i)` is generated by the coefficient recursion
//! obtained from two integrations of `C_(n-1)`, and `S_n = 2 * int_0^z C_n`
//! is obtained by term-wise integration. Everything here is exact rational
//! arithmetic; floating point only enters in [`BracketPoly::eval`].

use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bernoulli::{abs_bernoulli_term, pow2, rational, Rational};
use crate::bracket::centered_shifted;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Polynomial in the bracket variable `u = <z - shift>`.
#[derive(Debug, Clone)]
pub struct BracketPoly {
    coeffs: Vec<Rational>,
    shift: Rational,
    approx: Vec<f64>,
    shift_f64: f64,
}

impl PartialEq for BracketPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.shift == other.shift
    }
}

impl BracketPoly {
    /// Builds a canonical polynomial (trailing zero coefficients stripped).
    pub fn new(mut coeffs: Vec<Rational>, shift: Rational) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let approx = coeffs.iter().map(to_f64).collect();
        let shift_f64 = to_f64(&shift);
        BracketPoly {
            coeffs,
            shift,
            approx,
            shift_f64,
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn parity(&self) -> Parity {
        let populated = |odd: bool| {
            self.coeffs
                .iter()
                .enumerate()
                .any(|(i, c)| (i % 2 == 1) == odd && !c.is_zero())
        };
        match (populated(false), populated(true)) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// Same coefficients, different shift.
    pub fn with_shift(&self, shift: Rational) -> Self {
        BracketPoly::new(self.coeffs.clone(), shift)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        BracketPoly::new(
            self.coeffs.iter().map(|c| c * factor).collect(),
            self.shift.clone(),
        )
    }

    /// Sum of two polynomials in the same bracket variable.
    pub fn add(&self, other: &BracketPoly) -> Result<Self> {
        if self.shift != other.shift {
            return Err(Error::Domain(
                "cannot add bracket polynomials with different shifts".into(),
            ));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                a + b
            })
            .collect();
        Ok(BracketPoly::new(coeffs, self.shift.clone()))
    }

    /// The bracket variable `<z - shift>` in floating point.
    pub fn bracket(&self, z: f64) -> f64 {
        centered_shifted(z, self.shift_f64)
    }

    /// Horner evaluation at `<z - shift>`.
    pub fn eval(&self, z: f64) -> f64 {
        self.eval_at_bracket(self.bracket(z))
    }

    pub fn eval_at_bracket(&self, u: f64) -> f64 {
        self.approx.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    /// Value and a rigorous bound on its floating-point error.
    pub fn eval_with_bound(&self, z: f64) -> (f64, f64) {
        let u = self.bracket(z);
        let bracket_err = if self.shift_f64 == 0.0 {
            0.0
        } else {
            f64::EPSILON
        };
        self.bound_at(u, bracket_err)
    }

    /// Evaluates at `<z - shift - extra>`, ignoring the stored shift's
    /// rational value beyond its `f64` image.
    pub(crate) fn eval_extra_shift_with_bound(&self, z: f64, extra: f64) -> (f64, f64) {
        let u = centered_shifted(z, self.shift_f64 + extra);
        let bracket_err = if self.shift_f64 + extra == 0.0 {
            0.0
        } else {
            f64::EPSILON
        };
        self.bound_at(u, bracket_err)
    }

    fn bound_at(&self, u: f64, bracket_err: f64) -> (f64, f64) {
        let value = self.eval_at_bracket(u);
        let au = u.abs();
        let mut abs_sum = 0.0;
        let mut deriv = 0.0;
        let mut power = 1.0;
        for (i, c) in self.approx.iter().enumerate() {
            abs_sum += c.abs() * power;
            if i + 1 < self.approx.len() {
                deriv += (i + 1) as f64 * self.approx[i + 1].abs() * power;
            }
            power *= au;
        }
        let eps = f64::EPSILON;
        let d = self.degree().max(1) as f64;
        let gamma = 2.0 * d * eps / (1.0 - 2.0 * d * eps);
        let bound = (gamma + eps) * abs_sum + deriv * bracket_err;
        (value, bound)
    }

    /// `int_0^z p(<zeta - s>) dzeta`, term by term.
    pub fn integrate(&self) -> IntegratedPoly {
        let neg_shift = centered_rational(&-self.shift.clone());
        let mut periodic = vec![Rational::zero(); self.coeffs.len() + 1];
        let mut linear = Rational::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m1 = Rational::from_integer(BigInt::from(m + 1));
            periodic[m + 1] += c / &m1;
            periodic[0] -= c * pow_rational(&neg_shift, m + 1) / &m1;
            if m % 2 == 0 {
                let w = c / (Rational::from_integer(pow2(m as u32)) * &m1);
                periodic[0] += &w * &neg_shift;
                linear += w;
            }
        }
        IntegratedPoly {
            periodic: BracketPoly::new(periodic, self.shift.clone()),
            linear,
        }
    }

    /// LaTeX rendering, highest power first.
    pub fn to_latex(&self) -> String {
        let var = bracket_name(&self.shift, r"\langle ", r"\rangle");
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let a = c.abs();
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!(r"\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            match i {
                0 => out.push_str(&coef),
                _ => {
                    if !a.is_one() {
                        out.push_str(&coef);
                    }
                    out.push_str(&var);
                    if i > 1 {
                        out.push_str(&format!("^{{{i}}}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = bracket_name(&self.shift, "<", ">");
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{sep}{a}")?,
                1 => write!(f, "{sep}{a}*{var}")?,
                _ => write!(f, "{sep}{a}*{var}^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn bracket_name(shift: &Rational, open: &str, close: &str) -> String {
    if shift.is_zero() {
        format!("{open}z{close}")
    } else if shift.is_negative() {
        format!("{open}z+{}{close}", shift.abs())
    } else {
        format!("{open}z-{shift}{close}")
    }
}

/// Result of integrating a bracket polynomial from 0 to `z`:
/// `periodic(<z - s>) + linear * (z - <z - s>)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratedPoly {
    pub periodic: BracketPoly,
    pub linear: Rational,
}

impl IntegratedPoly {
    pub fn eval(&self, z: f64) -> f64 {
        let u = self.periodic.bracket(z);
        self.periodic.eval_at_bracket(u) + to_f64(&self.linear) * (z - u)
    }
}

pub fn integrate_bracket_poly(p: &BracketPoly) -> IntegratedPoly {
    p.integrate()
}

pub fn eval_poly(p: &BracketPoly, z: f64) -> f64 {
    p.eval(z)
}

pub(crate) fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn pow_rational(q: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * q)
}

/// Exact `<q>` for rational `q`.
fn centered_rational(q: &Rational) -> Rational {
    let half = rational(1, 2);
    q - (q + half).floor()
}

fn c_tables() -> &'static RwLock<Vec<Arc<Vec<Rational>>>> {
    static TABLES: OnceLock<RwLock<Vec<Arc<Vec<Rational>>>>> = OnceLock::new();
    TABLES.get_or_init(|| RwLock::new(vec![Arc::new(vec![rational(-1, 12), rational(1, 1)])]))
}

fn c_table_shared(n: u32) -> Result<Arc<Vec<Rational>>> {
    if n == 0 {
        return Err(Error::Domain(
            "C_0 has no bracket-polynomial closed form; c_table needs n >= 1".into(),
        ));
    }
    let idx = n as usize - 1;
    if let Some(t) = c_tables().read().expect("c table poisoned").get(idx) {
        return Ok(t.clone());
    }
    let mut tables = c_tables().write().expect("c table poisoned");
    while tables.len() <= idx {
        let m = tables.len() as u32 + 1;
        let next = next_c_row(&tables[tables.len() - 1], m)?;
        tables.push(Arc::new(next));
    }
    Ok(tables[idx].clone())
}

// Coefficients of C_m from those of C_(m-1).
fn next_c_row(prev: &[Rational], m: u32) -> Result<Vec<Rational>> {
    let mut row = Vec::with_capacity(m as usize + 1);
    row.push(-abs_bernoulli_term(m - 1)?);
    let mut c1 = Rational::zero();
    for (i, c) in prev.iter().enumerate().skip(1) {
        // 2^(2i-1) (2i+1), i >= 1
        let d = Rational::from_integer(pow2(2 * i as u32 - 1) * BigInt::from(2 * i + 1));
        c1 += c / d;
    }
    // the vanishing-mean constraint on the previous row makes this sum -2 c_0
    if c1 != -Rational::from_integer(BigInt::from(2)) * &prev[0] {
        return Err(Error::Internal(format!(
            "c_1({m}) disagrees with -2 c_0({})",
            m - 1
        )));
    }
    row.push(c1);
    for i in 2..=m as usize {
        let d = Rational::from_integer(BigInt::from(i * (2 * i - 1)));
        row.push(-Rational::from_integer(BigInt::from(2)) * &prev[i - 1] / d);
    }
    Ok(row)
}

/// Exact `[c_0(n), ..., c_n(n)]`.
pub fn c_table(n: u32) -> Result<Vec<Rational>> {
    Ok(c_table_shared(n)?.as_ref().clone())
}

/// True iff `sum_i c_i(n) / (4^i (2i+1)) == 0`, i.e. `C_n` has zero mean.
pub fn constraint_check(n: u32) -> Result<bool> {
    let table = c_table_shared(n)?;
    let total: Rational = table
        .iter()
        .enumerate()
        .map(|(i, c)| c / Rational::from_integer(pow2(2 * i as u32) * BigInt::from(2 * i + 1)))
        .sum();
    Ok(total.is_zero())
}

#[derive(Clone, Copy)]
enum PolyKind {
    Cos,
    Sin,
}

fn poly_cache(kind: PolyKind) -> &'static RwLock<Vec<Option<Arc<BracketPoly>>>> {
    static COS: OnceLock<RwLock<Vec<Option<Arc<BracketPoly>>>>> = OnceLock::new();
    static SIN: OnceLock<RwLock<Vec<Option<Arc<BracketPoly>>>>> = OnceLock::new();
    match kind {
        PolyKind::Cos => COS.get_or_init(Default::default),
        PolyKind::Sin => SIN.get_or_init(Default::default),
    }
}

fn memo(
    kind: PolyKind,
    n: u32,
    build: impl FnOnce() -> Result<BracketPoly>,
) -> Result<Arc<BracketPoly>> {
    let cache = poly_cache(kind);
    if let Some(Some(p)) = cache.read().expect("poly cache poisoned").get(n as usize) {
        return Ok(p.clone());
    }
    let p = Arc::new(build()?);
    let mut w = cache.write().expect("poly cache poisoned");
    if w.len() <= n as usize {
        w.resize(n as usize + 1, None);
    }
    w[n as usize] = Some(p.clone());
    Ok(p)
}

pub(crate) fn shared_poly_c(n: u32) -> Result<Arc<BracketPoly>> {
    memo(PolyKind::Cos, n, || {
        let table = c_table_shared(n)?;
        let mut coeffs = vec![Rational::zero(); 2 * n as usize + 1];
        for (i, c) in table.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Ok(BracketPoly::new(coeffs, Rational::zero()))
    })
}

pub(crate) fn shared_poly_s(n: u32) -> Result<Arc<BracketPoly>> {
    memo(PolyKind::Sin, n, || {
        if n == 0 {
            return Ok(BracketPoly::new(
                vec![Rational::zero(), rational(-1, 1)],
                Rational::zero(),
            ));
        }
        let integrated = shared_poly_c(n)?.integrate();
        if !integrated.linear.is_zero() {
            return Err(Error::Internal(format!(
                "integral of C_{n} has a non-periodic part {}",
                integrated.linear
            )));
        }
        Ok(integrated.periodic.scale(&rational(2, 1)))
    })
}

/// `C_n(z)` as an even polynomial in `<z>`.
pub fn poly_c(n: u32) -> Result<BracketPoly> {
    Ok(shared_poly_c(n)?.as_ref().clone())
}

/// `S_n(z)` as an odd polynomial in `<z>`.
pub fn poly_s(n: u32) -> Result<BracketPoly> {
    Ok(shared_poly_s(n)?.as_ref().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn golden_rows() {
        assert_eq!(c_table(1).unwrap(), vec![q(-1, 12), q(1, 1)]);
        assert_eq!(c_table(2).unwrap(), vec![q(-7, 720), q(1, 6), q(-1, 3)]);
        assert_eq!(
            c_table(3).unwrap(),
            vec![q(-31, 30240), q(7, 360), q(-1, 18), q(2, 45)]
        );
    }

    #[test]
    fn c_table_rejects_zero() {
        assert!(matches!(c_table(0), Err(Error::Domain(_))));
    }

    #[test]
    fn sine_polys() {
        let s0 = poly_s(0).unwrap();
        assert_eq!(s0.coefficients(), &[q(0, 1), q(-1, 1)]);
        let s1 = poly_s(1).unwrap();
        assert_eq!(s1.coefficients(), &[q(0, 1), q(-1, 6), q(0, 1), q(2, 3)]);
        let s2 = poly_s(2).unwrap();
        assert_eq!(
            s2.coefficients(),
            &[q(0, 1), q(-7, 360), q(0, 1), q(1, 9), q(0, 1), q(-2, 15)]
        );
        assert_eq!(s2.parity(), Parity::Odd);
        assert_eq!(poly_c(4).unwrap().parity(), Parity::Even);
    }

    #[test]
    fn integration_examples() {
        let u = BracketPoly::new(vec![q(0, 1), q(1, 1)], q(0, 1));
        let i = u.integrate();
        assert_eq!(i.periodic.coefficients(), &[q(0, 1), q(0, 1), q(1, 2)]);
        assert!(i.linear.is_zero());

        let u2 = BracketPoly::new(vec![q(0, 1), q(0, 1), q(1, 1)], q(0, 1));
        let i = u2.integrate();
        assert_eq!(
            i.periodic.coefficients(),
            &[q(0, 1), q(0, 1), q(0, 1), q(1, 3)]
        );
        assert_eq!(i.linear, q(1, 12));

        let shifted = BracketPoly::new(vec![q(0, 1), q(1, 1)], q(1, 2));
        let i = shifted.integrate();
        assert_eq!(i.periodic.coefficients(), &[q(-1, 8), q(0, 1), q(1, 2)]);
        assert!(i.linear.is_zero());
    }

    #[test]
    fn shifted_even_integral_vanishes_at_origin() {
        let p = BracketPoly::new(vec![q(0, 1), q(0, 1), q(1, 1)], q(1, 2));
        let i = p.integrate();
        assert!(i.eval(0.0).abs() < 1e-16);
        // midpoint rule on [0, 0.8]
        let n = 20000;
        let h = 0.8 / n as f64;
        let quad: f64 = (0..n).map(|k| p.eval((k as f64 + 0.5) * h) * h).sum();
        assert!((i.eval(0.8) - quad).abs() < 1e-9);
    }

    #[test]
    fn constraint_holds() {
        for n in [1, 2, 10] {
            assert!(constraint_check(n).unwrap());
        }
    }

    #[test]
    fn eval_examples() {
        assert!((poly_c(1).unwrap().eval(0.0) + 1.0 / 12.0).abs() < 1e-16);
        assert!(poly_s(1).unwrap().eval(0.5).abs() < 1e-16);
        let expected = -1.0 / 768.0 + 1.0 / 96.0 - 7.0 / 720.0;
        assert!((poly_c(2).unwrap().eval(0.25) - expected).abs() < 1e-16);
    }

    #[test]
    fn canonical_form_strips_zeros() {
        let p = BracketPoly::new(vec![q(1, 1), q(0, 1), q(0, 1)], q(0, 1));
        assert_eq!(p.degree(), 0);
        assert!(BracketPoly::new(vec![q(0, 1)], q(0, 1)).is_zero());
    }

    #[test]
    fn rendering() {
        let c1 = poly_c(1).unwrap();
        assert_eq!(c1.to_string(), "1*<z>^2 - 1/12");
        assert_eq!(c1.to_latex(), r"\langle z\rangle^{2} - \frac{1}{12}");
        let s = poly_s(1).unwrap().with_shift(q(1, 2));
        assert_eq!(s.to_string(), "2/3*<z-1/2>^3 - 1/6*<z-1/2>");
    }

    #[test]
    fn error_bound_is_tight_for_polys() {
        let p = poly_c(6).unwrap();
        for z in [-0.49, -0.2, 0.0, 0.13, 0.4999, 123.25] {
            let (v, b) = p.eval_with_bound(z);
            assert!(b <= 1e-14 * (1.0 + v.abs()), "z={z} bound={b}");
        }
    }
}
