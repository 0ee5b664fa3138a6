//! The trigonometric series families and their closed forms.

mod appendix;
mod eval;
mod family;
pub mod printed;
mod singular;

pub use appendix::quarter_shift_parts;
pub use eval::{eval, eval_via_relation, EvalPath, EvalResult};
pub use family::{IndexKind, SumFamily, Trig};
pub use singular::{singular_distance, singular_points, SingularSet};
