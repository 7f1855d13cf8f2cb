//! Exact arithmetic substrate: rationals, dense polynomials, rational
//! functions and their Laurent expansions at 0.

mod modular;
mod poly;
mod ratfun;

pub use poly::{interpolate, lagrange_bound, Poly};
pub use ratfun::RatFun;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
