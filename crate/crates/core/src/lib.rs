//! Closed-form evaluation of generalized Englert Fourier series.
//!
//! Families of trigonometric series `sum (+-1)^k trig(2 pi k z) / (pi k)^p`
//! (and their odd-index and modified variants) are evaluated through exact
//! bracket polynomials in `<z>`, elementary closed forms, or polylogarithms on
//! the unit circle. An independent partial-summation [`oracle`] checks every
//! closed form.

pub mod bernoulli;
pub mod bracket;
pub mod cli;
pub mod coeffs;
pub mod error;
pub mod oracle;
pub mod polylog;
pub mod sums;
pub mod verify;

pub use bernoulli::{abs_bernoulli_term, bernoulli, format_rational, BernoulliCache, Rational};
pub use bracket::{centered, frac, CenteredFrac, FracPart};
pub use coeffs::{
    c_table, constraint_check, eval_poly, integrate_bracket_poly, poly_c, poly_s, BracketPoly,
    IntegratedPoly, Parity,
};
pub use error::{Error, Result, SingularKind};
pub use oracle::{arbitrate, oracle_eval, ConformanceReport, OracleMode, OracleReport, Verdict};
pub use polylog::{
    im_li_odd_as_poly, li_on_circle, li_quarter_shift, li_series, re_li_even_as_poly, zeta,
    LiValue, Sign, UnitCirclePoint,
};
pub use sums::{
    eval, eval_via_relation, singular_distance, singular_points, EvalPath, EvalResult, IndexKind,
    SingularSet, SumFamily, Trig,
};
