//! Grid comparison of closed forms against the oracle, and the conformance
//! checks for displayed formulas that disagree with the series.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{agreement_threshold, arbitrate, oracle_eval, ConformanceReport, MIN_TOL};
use crate::sums::{eval, eval_via_relation, printed, singular_distance, SumFamily};

/// Evenly spaced points `z0, ..., z1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub z0: f64,
    pub z1: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(z0: f64, z1: f64, steps: usize) -> Result<Self> {
        if !(z0.is_finite() && z1.is_finite()) || z0 >= z1 {
            return Err(Error::Domain(format!("grid needs z0 < z1, got {z0}, {z1}")));
        }
        if steps < 2 {
            return Err(Error::Domain(format!(
                "grid needs at least 2 steps, got {steps}"
            )));
        }
        Ok(Grid { z0, z1, steps })
    }

    /// The points, with values within rounding of a multiple of 1/8 snapped
    /// onto it so integers and half-integers come out exact.
    pub fn points(&self) -> Vec<f64> {
        let h = (self.z1 - self.z0) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let z = if i + 1 == self.steps {
                    self.z1
                } else {
                    self.z0 + i as f64 * h
                };
                let snapped = (z * 8.0).round() / 8.0;
                if (z - snapped).abs() <= 1e-12 * (1.0 + z.abs()) {
                    snapped
                } else {
                    z
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub families: Vec<String>,
    pub orders: RangeInclusive<u32>,
    pub grid: Grid,
    pub tol: f64,
    pub exclusion_eps: f64,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol < MIN_TOL {
            return Err(Error::Domain(format!(
                "tolerance {:e} is below {MIN_TOL:e}",
                self.tol
            )));
        }
        if self.exclusion_eps.is_nan() || self.exclusion_eps < 0.0 {
            return Err(Error::Domain(
                "exclusion radius must be non-negative".into(),
            ));
        }
        for code in &self.families {
            SumFamily::parse(code, 1)?;
        }
        Ok(())
    }

    /// Every supported `(family, n)` pair in the configured ranges.
    pub fn members(&self) -> Result<Vec<SumFamily>> {
        let mut out = Vec::new();
        for code in &self.families {
            for n in self.orders.clone() {
                match SumFamily::parse(code, n) {
                    Ok(f) => out.push(f),
                    Err(Error::UnsupportedOrder { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowVerdict {
    Pass,
    Fail,
    Error,
}

impl RowVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail => "fail",
            RowVerdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub family: String,
    pub n: u32,
    pub z: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_diff: f64,
    pub verdict: RowVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub rows: Vec<VerifyRow>,
    pub excluded: usize,
}

impl VerifyOutcome {
    pub fn passed(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.verdict == RowVerdict::Pass)
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.rows.len()
    }

    /// `PASS k/k` or `FAIL j/k`, `j` counting the failing rows.
    pub fn summary(&self) -> String {
        let total = self.rows.len();
        let failed = total - self.passed();
        if failed == 0 {
            format!("PASS {total}/{total}")
        } else {
            format!("FAIL {failed}/{total}")
        }
    }
}

fn check_point(f: &SumFamily, z: f64, tol: f64) -> VerifyRow {
    let row = |closed_form: f64, oracle: f64, abs_diff: f64, verdict| VerifyRow {
        family: f.code(),
        n: f.order(),
        z,
        closed_form,
        oracle,
        abs_diff,
        verdict,
    };
    let cf = match eval(f, z) {
        Ok(r) => r.value,
        Err(_) => return row(f64::NAN, f64::NAN, f64::NAN, RowVerdict::Error),
    };
    let o = match oracle_eval(f, z, tol) {
        Ok(o) => o,
        Err(_) => return row(cf, f64::NAN, f64::NAN, RowVerdict::Error),
    };
    let diff = (cf - o.value).abs();
    let verdict = if diff <= agreement_threshold(f, &o, tol) {
        RowVerdict::Pass
    } else {
        RowVerdict::Fail
    };
    row(cf, o.value, diff, verdict)
}

/// Compares every closed form in the configuration with the oracle at every
/// grid point farther than `exclusion_eps` from a singular point.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyOutcome> {
    cfg.validate()?;
    let points = cfg.grid.points();
    let mut tasks = Vec::new();
    let mut excluded = 0;
    for f in cfg.members()? {
        for &z in &points {
            if singular_distance(&f, z) <= cfg.exclusion_eps {
                excluded += 1;
            } else {
                tasks.push((f, z));
            }
        }
    }
    let rows = tasks
        .par_iter()
        .map(|(f, z)| check_point(f, *z, cfg.tol))
        .collect();
    Ok(VerifyOutcome { rows, excluded })
}

/// One arbitration between two candidate closed forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArbitrationCase {
    pub name: String,
    pub claim_a: &'static str,
    pub claim_b: &'static str,
    pub report: ConformanceReport,
}

/// The sixteen points used for every arbitration.
pub fn arbitration_points() -> Vec<f64> {
    (0..16).map(|i| -0.5 + (i as f64 + 0.5) / 16.0).collect()
}

fn value(f: SumFamily) -> impl Fn(f64) -> Result<f64> {
    move |z| eval(&f, z).map(|r| r.value)
}

fn relation(f: SumFamily) -> impl Fn(f64) -> Result<f64> {
    move |z| eval_via_relation(&f, z).map(|r| r.value)
}

/// Runs every arbitration case at `tol`.
pub fn run_arbitration(tol: f64) -> Result<Vec<ArbitrationCase>> {
    let grid = arbitration_points();
    let mut cases = Vec::new();
    let mut push = |name: String, a, b, report| {
        cases.push(ArbitrationCase {
            name,
            claim_a: a,
            claim_b: b,
            report,
        })
    };
    for n in 1..=4 {
        let f = SumFamily::parse("S", n)?;
        let rep = arbitrate(value(f), |z| printed::s_displayed(n, z), &f, &grid, tol)?;
        push(format!("S_{n}"), "integrated", "displayed", rep);
    }
    for (code, n) in [("bSp", 1), ("bCp", 1), ("bSp", 2)] {
        let f = SumFamily::parse(code, n)?;
        let rep = arbitrate(value(f), relation(f), &f, &grid, tol)?;
        push(f.to_string(), "printed", "interrelation", rep);
    }
    for n in 1..=2 {
        let f = SumFamily::parse("Sp", n)?;
        let rep = arbitrate(
            value(f),
            |z| printed::sp_conjugate_reading(n, z),
            &f,
            &grid,
            tol,
        )?;
        push(f.to_string(), "li-at-plus", "li-at-minus", rep);
    }
    let f = SumFamily::parse("Qp", 0)?;
    let rep = arbitrate(value(f), |z| Ok(printed::qp0_displayed(z)), &f, &grid, tol)?;
    push(f.to_string(), "log-plus", "displayed", rep);
    let f = SumFamily::parse("P", 0)?;
    let rep = arbitrate(value(f), |z| Ok(printed::p0_arctan(z)), &f, &grid, tol)?;
    push(f.to_string(), "reduction", "arctan", rep);
    let f = SumFamily::parse("C", 1)?;
    let rep = arbitrate(value(f), value(f), &f, &grid, tol)?;
    push(f.to_string(), "closed-form", "closed-form", rep);
    Ok(cases)
}
