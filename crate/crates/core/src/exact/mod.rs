//! Exact arithmetic kernel: rationals, Laurent polynomials in `t = 1/q`, and
//! truncated power series in `x` with Laurent-polynomial coefficients.

mod laurent;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use rational::{parse_rational, rat, Rational};
pub use series::PowerSeries;
