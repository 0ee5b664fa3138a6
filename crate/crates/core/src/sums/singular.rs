use std::fmt;

use serde::Serialize;

use super::family::{IndexKind, SumFamily, Trig};
use crate::bracket::centered_unchecked;
use crate::error::SingularKind;

/// A periodic set `offset + period * Z` of non-regular points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularSet {
    pub kind: SingularKind,
    /// Offset as the exact fraction `num / den`.
    pub offset: (i32, i32),
    /// Period as the exact fraction `num / den`.
    pub period: (i32, i32),
}

impl SingularSet {
    const fn new(kind: SingularKind, offset: (i32, i32), period: (i32, i32)) -> Self {
        SingularSet {
            kind,
            offset,
            period,
        }
    }

    fn offset_f64(&self) -> f64 {
        self.offset.0 as f64 / self.offset.1 as f64
    }

    fn period_f64(&self) -> f64 {
        self.period.0 as f64 / self.period.1 as f64
    }

    /// Distance from `z` to the nearest point of the set.
    pub fn distance(&self, z: f64) -> f64 {
        let p = self.period_f64();
        // reduce by whole periods before dividing so the test is exact on dyadic grids
        let w = centered_unchecked(z / p) * p;
        let d = centered_unchecked((w - self.offset_f64()) / p);
        d.abs() * p
    }

    pub fn contains(&self, z: f64) -> bool {
        self.distance(z) == 0.0
    }
}

fn frac_str((n, d): (i32, i32)) -> String {
    if n == 0 {
        "0".into()
    } else if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

impl fmt::Display for SingularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let period = if self.period == (1, 1) {
            "Z".to_string()
        } else {
            format!("{}Z", frac_str(self.period))
        };
        if self.offset.0 == 0 {
            write!(f, "{} at z in {period}", self.kind)
        } else {
            write!(
                f,
                "{} at z in {} + {period}",
                self.kind,
                frac_str(self.offset)
            )
        }
    }
}

const HALF: (i32, i32) = (1, 2);
const ZERO: (i32, i32) = (0, 1);
const QUARTER: (i32, i32) = (1, 4);
const ONE: (i32, i32) = (1, 1);

/// The poles, logarithmic singularities and jumps of a family's closed form.
/// Families with denominator power >= 2 are continuous everywhere.
pub fn singular_points(f: &SumFamily) -> Vec<SingularSet> {
    use SingularKind::*;
    if f.power() >= 2 {
        return Vec::new();
    }
    let alt = f.alternating();
    let set = |kind, offset, period| vec![SingularSet::new(kind, offset, period)];
    // alternating natural/modified families are singular at half-integers,
    // non-alternating ones at integers
    let base = if alt { HALF } else { ZERO };
    match (f.index(), f.trig(), f.primed()) {
        (IndexKind::Natural, Trig::Sin, false) => set(Jump, base, ONE),
        (IndexKind::Natural, Trig::Sin, true) => set(Pole, base, ONE),
        (IndexKind::Natural, Trig::Cos, false) => set(Pole, ZERO, ONE),
        (IndexKind::Natural, Trig::Cos, true) => set(Log, base, ONE),
        (IndexKind::Odd, Trig::Sin, _) => {
            if alt {
                set(Log, QUARTER, HALF)
            } else {
                set(Jump, ZERO, HALF)
            }
        }
        (IndexKind::Odd, Trig::Cos, _) => {
            if alt {
                set(Jump, QUARTER, HALF)
            } else {
                set(Log, ZERO, HALF)
            }
        }
        (IndexKind::Modified, Trig::Sin, _) => set(Jump, base, ONE),
        (IndexKind::Modified, Trig::Cos, _) => set(Log, base, ONE),
    }
}

/// The first set containing `z` exactly, if any.
pub(crate) fn hit(f: &SumFamily, z: f64) -> Option<SingularSet> {
    singular_points(f).into_iter().find(|s| s.contains(z))
}

/// Distance from `z` to the nearest singular point of `f` (infinite if none).
pub fn singular_distance(f: &SumFamily, z: f64) -> f64 {
    singular_points(f)
        .iter()
        .map(|s| s.distance(z))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(code: &str, n: u32) -> SumFamily {
        SumFamily::parse(code, n).unwrap()
    }

    #[test]
    fn examples() {
        let s = singular_points(&fam("Sp", 0));
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SingularKind::Pole);
        assert_eq!(s[0].to_string(), "pole at z in 1/2 + Z");
        assert_eq!(
            singular_points(&fam("tCp", 0))[0].to_string(),
            "log at z in Z"
        );
        assert_eq!(
            singular_points(&fam("S", 0))[0].to_string(),
            "jump at z in 1/2 + Z"
        );
        assert_eq!(
            singular_points(&fam("bS", 0))[0].to_string(),
            "log at z in 1/4 + 1/2Z"
        );
        assert!(singular_points(&fam("C", 1)).is_empty());
    }

    #[test]
    fn membership() {
        let s = singular_points(&fam("bCp", 0))[0];
        for z in [0.25, -0.25, 0.75, 1.25, -1.75] {
            assert!(s.contains(z), "{z}");
        }
        assert!(!s.contains(0.5));
        assert!((s.distance(0.3) - 0.05).abs() < 1e-15);
        assert!(hit(&fam("S", 0), -0.5).is_some());
        assert!(hit(&fam("S", 0), 0.0).is_none());
    }
}
