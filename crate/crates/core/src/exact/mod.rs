//! Exact arithmetic: rationals, sparse multivariate polynomials, the rings
//! `B_N = Q[z_i, (z_i - z_j)^-1]` and precision-tracked Laurent series.
#![doc = include_str!("../../../../book/src/exact.md")]

mod coeff;
mod laurent;
pub mod linalg;
mod poly;
mod ratfrac;

pub use coeff::{render_sum, sign, CoeffRing, Coefficient, RenderCoeff};
pub use laurent::{LaurentSeries, EXACT};
pub use poly::MultiPoly;
pub use ratfrac::{laurent_expand, RatFrac, Vars};

/// The ground field.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Binomial coefficient `C(n, k)` for `n >= 0`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return q(0);
    }
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}
