//! Minimal algebraic interfaces shared by every coefficient type.

use std::fmt;

use super::Rational;
use num_traits::{One, Signed, Zero};

/// Something that can sit as a coefficient in a sparse linear combination:
/// it can be added, negated and scaled by a rational number.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    /// A zero of the same kind (same ambient ring or space).
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// A coefficient type that also multiplies (commutatively, or graded-commutatively).
pub trait CoeffRing: Coefficient {
    fn mul(&self, other: &Self) -> Self;
    /// The unit of the same kind.
    fn one_like(&self) -> Self;
}

/// Rendering of a coefficient multiplying a monomial string.
pub trait RenderCoeff: Coefficient {
    /// Returns `(negative, body)` such that the term reads `body` or `-body`.
    /// An empty `mono` means the constant monomial.
    fn render_term(&self, mono: &str) -> (bool, String);
}

/// Join signed terms as `a + b - c`; the empty sum renders as `0`.
pub fn render_sum(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (neg, body) in terms {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl CoeffRing for Rational {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl RenderCoeff for Rational {
    fn render_term(&self, mono: &str) -> (bool, String) {
        let neg = self.is_negative();
        let a = self.abs();
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono.to_string()
        } else {
            format!("{a}*{mono}")
        };
        (neg, body)
    }
}

/// `(-1)^n` as a rational.
pub fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}
