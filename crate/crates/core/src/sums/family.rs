use std::fmt;

use crate::error::{Error, Result};

/// Which integers appear in the denominator and the trigonometric argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    /// `trig(2 pi k z) / (pi k)^p`, `k >= 1`.
    Natural,
    /// `trig(2 pi (2k+1) z) / (pi (2k+1))^p`, `k >= 0`.
    Odd,
    /// `trig(2 pi k z) / (pi (2k+1))^p`, `k >= 0` (the P/Q sums).
    Modified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trig {
    Sin,
    Cos,
}

/// One series family together with its order `n`.
///
/// `primed` selects the summands that are odd functions of the index (sine
/// over an even power, cosine over an odd power); unprimed families have
/// even summands and bracket-polynomial closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumFamily {
    index: IndexKind,
    alternating: bool,
    trig: Trig,
    primed: bool,
    order: u32,
}

impl SumFamily {
    pub fn new(
        index: IndexKind,
        alternating: bool,
        trig: Trig,
        primed: bool,
        order: u32,
    ) -> Result<Self> {
        let f = SumFamily {
            index,
            alternating,
            trig,
            primed,
            order,
        };
        f.check_order()?;
        Ok(f)
    }

    /// Parses an ASCII family code (`S`, `tbCp`, `Qp`, `tP`, ...) and order.
    pub fn parse(code: &str, order: u32) -> Result<Self> {
        let unknown = || Error::UnknownFamily(code.to_string());
        let mut rest = code;
        let alternating = match rest.strip_prefix('t') {
            Some(r) => {
                rest = r;
                false
            }
            None => true,
        };
        let bold = match rest.strip_prefix('b') {
            Some(r) => {
                rest = r;
                true
            }
            None => false,
        };
        let (head, primed) = match rest.strip_suffix('p') {
            Some(h) => (h, true),
            None => (rest, false),
        };
        let (index, trig) = match (head, bold) {
            ("S", false) => (IndexKind::Natural, Trig::Sin),
            ("C", false) => (IndexKind::Natural, Trig::Cos),
            ("S", true) => (IndexKind::Odd, Trig::Sin),
            ("C", true) => (IndexKind::Odd, Trig::Cos),
            ("P", false) => (IndexKind::Modified, Trig::Sin),
            ("Q", false) => (IndexKind::Modified, Trig::Cos),
            _ => return Err(unknown()),
        };
        SumFamily::new(index, alternating, trig, primed, order)
    }

    /// Every family code accepted by [`SumFamily::parse`].
    pub const CODES: [&'static str; 24] = [
        "S", "C", "Sp", "Cp", "tS", "tC", "tSp", "tCp", "bS", "bC", "bSp", "bCp", "tbS", "tbC",
        "tbSp", "tbCp", "P", "Q", "Pp", "Qp", "tP", "tQ", "tPp", "tQp",
    ];

    pub fn code(&self) -> String {
        let mut s = String::new();
        if !self.alternating {
            s.push('t');
        }
        if self.index == IndexKind::Odd {
            s.push('b');
        }
        s.push(match (self.index, self.trig) {
            (IndexKind::Modified, Trig::Sin) => 'P',
            (IndexKind::Modified, Trig::Cos) => 'Q',
            (_, Trig::Sin) => 'S',
            (_, Trig::Cos) => 'C',
        });
        if self.primed {
            s.push('p');
        }
        s
    }

    pub fn index(&self) -> IndexKind {
        self.index
    }

    pub fn alternating(&self) -> bool {
        self.alternating
    }

    pub fn trig(&self) -> Trig {
        self.trig
    }

    pub fn primed(&self) -> bool {
        self.primed
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power `p` of the denominator.
    pub fn power(&self) -> u32 {
        power_of(self.trig, self.primed, self.order)
    }

    /// Same family, different order.
    pub fn with_order(&self, order: u32) -> Result<Self> {
        SumFamily::new(self.index, self.alternating, self.trig, self.primed, order)
    }

    /// The family flipped between alternating and non-alternating.
    pub(crate) fn toggled(&self) -> Self {
        SumFamily {
            alternating: !self.alternating,
            ..*self
        }
    }

    pub(crate) fn with_index(&self, index: IndexKind) -> Self {
        SumFamily { index, ..*self }
    }

    pub(crate) fn unchecked(
        index: IndexKind,
        alternating: bool,
        trig: Trig,
        primed: bool,
        order: u32,
    ) -> Self {
        SumFamily {
            index,
            alternating,
            trig,
            primed,
            order,
        }
    }

    fn check_order(&self) -> Result<()> {
        if self.power() > 0 {
            return Ok(());
        }
        // order-0 series that diverge but carry a printed (Abel/Cesaro) value
        let allowed = self.index == IndexKind::Natural
            && match (self.trig, self.primed) {
                (Trig::Sin, true) => true,
                (Trig::Cos, false) => !self.alternating,
                _ => false,
            };
        if allowed {
            Ok(())
        } else {
            Err(Error::UnsupportedOrder {
                family: self.code(),
                order: self.order,
                reason: "the series has no closed form at this order",
            })
        }
    }

    /// True when the series converges only conditionally (or is summed in
    /// the Cesaro sense): denominator power 0 or 1.
    pub fn is_conditional(&self) -> bool {
        self.power() <= 1
    }
}

pub(crate) fn power_of(trig: Trig, primed: bool, n: u32) -> u32 {
    match (trig, primed) {
        (Trig::Sin, false) | (Trig::Cos, true) => 2 * n + 1,
        (Trig::Cos, false) | (Trig::Sin, true) => 2 * n,
    }
}

impl fmt::Display for SumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.code(), self.order)
    }
}
