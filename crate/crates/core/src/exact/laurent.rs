use std::collections::BTreeMap;
use std::fmt;

use super::{CoeffRing, Coefficient, Rational};

/// Precision value standing for "no truncation": the series is a Laurent polynomial.
pub const EXACT: i32 = 1 << 28;

/// A truncated Laurent series `sum_k c_k x^k`: coefficients with `k < precision`
/// are exact, those at or above it are unknown.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<C> {
    var: String,
    terms: BTreeMap<i32, C>,
    precision: i32,
    zero: C,
}

impl<C: Coefficient> LaurentSeries<C> {
    /// The zero series; `zero` is a zero coefficient of the right kind.
    pub fn zero(var: &str, precision: i32, zero: C) -> Self {
        LaurentSeries { var: var.to_string(), terms: BTreeMap::new(), precision, zero }
    }

    /// A single term `c x^k` known exactly (a Laurent monomial).
    pub fn monomial(var: &str, k: i32, c: C) -> Self {
        let mut s = Self::zero(var, EXACT, c.zero_like());
        s.insert(k, c);
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn precision(&self) -> i32 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision >= EXACT
    }

    /// Lowest stored exponent; the precision when nothing is stored.
    pub fn min_degree(&self) -> i32 {
        self.terms.keys().next().copied().unwrap_or(self.precision)
    }

    /// Add `c x^k` into the series; exponents at or above the precision are dropped.
    pub fn insert(&mut self, k: i32, c: C) {
        if k >= self.precision || c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// Coefficient of `x^k`, `None` when `k` is at or beyond the precision.
    pub fn coeff(&self, k: i32) -> Option<C> {
        if k >= self.precision {
            return None;
        }
        Some(self.terms.get(&k).cloned().unwrap_or_else(|| self.zero.clone()))
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    pub fn get(&self, k: i32) -> Option<&C> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lower the precision to `k` (never raises it).
    pub fn truncate(&self, k: i32) -> Self {
        let precision = self.precision.min(k);
        LaurentSeries {
            var: self.var.clone(),
            terms: self.terms.range(..precision).map(|(&e, c)| (e, c.clone())).collect(),
            precision,
            zero: self.zero.clone(),
        }
    }

    pub fn with_precision(mut self, k: i32) -> Self {
        self.precision = k;
        self.terms.retain(|&e, _| e < k);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut out = self.truncate(precision);
        for (&k, c) in &other.terms {
            out.insert(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(self.zero.clone(), |c| Some(c.neg()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(self.zero.clone(), |c| Some(c.scale(q)))
    }

    /// Apply `f` to every coefficient, keeping exponents and precision.
    pub fn map<D: Coefficient>(&self, zero: D, f: impl Fn(&C) -> Option<D>) -> LaurentSeries<D> {
        let mut out = LaurentSeries::zero(&self.var, self.precision, zero);
        for (&k, c) in &self.terms {
            if let Some(d) = f(c) {
                out.insert(k, d);
            }
        }
        out
    }

    /// Multiply every exponent shift by `x^s`.
    pub fn shift(&self, s: i32) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k + s, c.clone())).collect(),
            precision: if self.is_exact() { EXACT } else { self.precision + s },
            zero: self.zero.clone(),
        }
    }

    /// `d/dx`: exponents shift down by one with integer factors.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero(&self.var, if self.is_exact() { EXACT } else { self.precision - 1 }, self.zero.clone());
        for (&k, c) in &self.terms {
            if k != 0 {
                out.insert(k - 1, c.scale(&super::q(k as i64)));
            }
        }
        out
    }

    pub fn relabel(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }
}

impl<C: CoeffRing> LaurentSeries<C> {
    /// Cauchy product; precision is `min(Ka + min_b, Kb + min_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let precision = if self.is_exact() && other.is_exact() {
            EXACT
        } else {
            let a = if self.is_exact() { EXACT } else { self.precision + other.min_degree() };
            let b = if other.is_exact() { EXACT } else { other.precision + self.min_degree() };
            a.min(b)
        };
        let mut out = Self::zero(&self.var, precision, self.zero.clone());
        for (&i, x) in &self.terms {
            for (&j, y) in &other.terms {
                if i + j < precision {
                    out.insert(i + j, x.mul(y));
                }
            }
        }
        out
    }
}

impl<C: Coefficient> Coefficient for LaurentSeries<C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.var, self.precision, self.zero.clone())
    }
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other)
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        LaurentSeries::scale(self, q)
    }
}

impl<C: CoeffRing> CoeffRing for LaurentSeries<C> {
    fn mul(&self, other: &Self) -> Self {
        LaurentSeries::mul(self, other)
    }
    fn one_like(&self) -> Self {
        Self::monomial(&self.var, 0, self.zero.one_like()).with_precision(self.precision)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let var = if self.var.chars().all(|c| c.is_ascii_alphanumeric()) { self.var.clone() } else { format!("({})", self.var) };
        for (&k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => var.clone(),
                _ => format!("{var}^{k}"),
            };
            if power.is_empty() {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]*{power}")?;
            }
        }
        if !self.is_exact() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O({var}^{})", self.precision)?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn inverse_times_local_var_is_one() {
        let a = LaurentSeries::monomial("x", -1, q(1));
        let b = LaurentSeries::monomial("x", 1, q(1));
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), Some(q(1)));
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn derivative_of_pole() {
        let a = LaurentSeries::monomial("x", -1, q(1));
        let d = a.derive();
        assert_eq!(d.coeff(-2), Some(q(-1)));
    }

    #[test]
    fn product_precision_rule() {
        let mut a = LaurentSeries::zero("x", 3, q(0));
        a.insert(-1, q(2));
        a.insert(1, q(1));
        let mut b = LaurentSeries::zero("x", 5, q(0));
        b.insert(0, q(1));
        let p = a.mul(&b);
        assert_eq!(p.precision(), (3 + 0).min(5 - 1));
    }

    #[test]
    fn render_tail() {
        let mut a = LaurentSeries::zero("w-z1", 2, q(0));
        a.insert(-1, q(1));
        assert_eq!(a.to_string(), "[1]*(w-z1)^-1 + O((w-z1)^2)");
    }
}
