use thiserror::Error;

/// Kind of non-regular point a closed form cannot be evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularKind {
    /// The closed form has a pole (tan, cot, or a divergent constant series).
    Pole,
    /// The closed form contains ln|.| of a vanishing quantity.
    Log,
    /// The function jumps; the series converges to the midpoint there.
    Jump,
}

impl std::fmt::Display for SingularKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SingularKind::Pole => "pole",
            SingularKind::Log => "log",
            SingularKind::Jump => "jump",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{family} is singular at z = {z} ({kind})")]
    Singular {
        family: String,
        z: f64,
        kind: SingularKind,
    },

    #[error("order {order} is not supported for {family}: {reason}")]
    UnsupportedOrder {
        family: String,
        order: u32,
        reason: &'static str,
    },

    #[error("index {requested} exceeds the configured limit {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("tolerance {tol:e} not reached after {terms} terms (tail bound {tail_bound:e})")]
    ToleranceNotReached {
        tol: f64,
        terms: u64,
        tail_bound: f64,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("unknown family code `{0}`")]
    UnknownFamily(String),
}

impl Error {
    /// Stable numeric code used by the CLI and the C ABI.
    pub fn code(&self) -> i32 {
        match self {
            Error::Domain(_) => 10,
            Error::Singular { .. } => 11,
            Error::UnsupportedOrder { .. } => 12,
            Error::Capacity { .. } => 13,
            Error::ToleranceNotReached { .. } => 14,
            Error::Internal(_) => 15,
            Error::UnknownFamily(_) => 16,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite input {z}")))
    }
}
