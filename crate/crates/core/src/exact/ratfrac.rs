use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::laurent::LaurentSeries;
use super::{binomial, MultiPoly, Rational};

/// The variable set of a ring `B_n`: `z_1..z_n`, where the last variable is
/// displayed as `w` when `w` is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Vars {
    pub n: usize,
    pub w: bool,
}

impl Vars {
    pub fn plain(n: usize) -> Self {
        Vars { n, w: false }
    }

    pub fn with_w(n: usize) -> Self {
        assert!(n >= 1);
        Vars { n, w: true }
    }

    pub fn name(&self, i: usize) -> String {
        if self.w && i + 1 == self.n {
            "w".into()
        } else {
            format!("z{}", i + 1)
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.n).map(|i| self.name(i)).collect()
    }

    /// Index of a variable by display name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        (0..self.n).find(|&i| self.name(i) == name)
    }
}

/// An element of `B_n`: a polynomial numerator over a product of pairwise
/// differences `(z_i - z_j)^{e_ij}`, `i < j`, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFrac {
    vars: Vars,
    num: MultiPoly,
    den: BTreeMap<(usize, usize), u32>,
}

impl RatFrac {
    /// Build and normalize `num / prod (z_i - z_j)^{e_ij}`. Pairs may be given in
    /// either order; `(j, i)` with `j > i` contributes a sign.
    pub fn normalize(vars: Vars, num: MultiPoly, den: impl IntoIterator<Item = ((usize, usize), u32)>) -> Self {
        assert_eq!(num.nvars(), vars.n);
        let mut num = num;
        let mut d: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for ((i, j), e) in den {
            assert!(i != j && i < vars.n && j < vars.n, "bad denominator pair");
            if e == 0 {
                continue;
            }
            let key = if i < j { (i, j) } else { (j, i) };
            if i > j && e % 2 == 1 {
                num = num.neg();
            }
            *d.entry(key).or_insert(0) += e;
        }
        let mut out = RatFrac { vars, num, den: d };
        out.cancel();
        out
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<_> = self.den.keys().copied().collect();
        for (i, j) in keys {
            while let Some(e) = self.den.get(&(i, j)).copied() {
                match self.num.div_diff(i, j) {
                    Some(quo) => {
                        self.num = quo;
                        if e == 1 {
                            self.den.remove(&(i, j));
                        } else {
                            self.den.insert((i, j), e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn zero(vars: Vars) -> Self {
        RatFrac { vars, num: MultiPoly::zero(vars.n), den: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        RatFrac { vars, num: MultiPoly::constant(vars.n, c), den: BTreeMap::new() }
    }

    pub fn poly(vars: Vars, p: MultiPoly) -> Self {
        Self::normalize(vars, p, [])
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        Self::poly(vars, MultiPoly::var(vars.n, i))
    }

    /// `(z_i - z_j)^e` for any integer `e`.
    pub fn diff_pow(vars: Vars, i: usize, j: usize, e: i32) -> Self {
        if e >= 0 {
            Self::poly(vars, MultiPoly::diff(vars.n, i, j).pow(e as u32))
        } else {
            Self::normalize(vars, MultiPoly::one(vars.n), [((i, j), (-e) as u32)])
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.den
    }

    /// Exponent of `(z_i - z_j)` in the reduced denominator.
    pub fn den_exponent(&self, i: usize, j: usize) -> u32 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.den.get(&key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn den_poly(vars: Vars, den: &BTreeMap<(usize, usize), u32>) -> MultiPoly {
        let mut p = MultiPoly::one(vars.n);
        for (&(i, j), &e) in den {
            p = p.mul(&MultiPoly::diff(vars.n, i, j).pow(e));
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "rings differ");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common = self.den.clone();
        for (&k, &e) in &other.den {
            let slot = common.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |r: &RatFrac| {
            let extra: BTreeMap<_, _> = common
                .iter()
                .filter_map(|(k, &e)| {
                    let have = r.den.get(k).copied().unwrap_or(0);
                    (e > have).then_some((*k, e - have))
                })
                .collect();
            r.num.mul(&Self::den_poly(r.vars, &extra))
        };
        let num = lift(self).add(&lift(other));
        Self::normalize(self.vars, num, common)
    }

    pub fn neg(&self) -> Self {
        RatFrac { vars: self.vars, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.vars);
        }
        RatFrac { vars: self.vars, num: self.num.scale(q), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "rings differ");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars);
        }
        let mut den = self.den.clone();
        for (&k, &e) in &other.den {
            *den.entry(k).or_insert(0) += e;
        }
        Self::normalize(self.vars, self.num.mul(&other.num), den)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, defined when the numerator is a constant times a
    /// product of pairwise differences.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut rest = self.num.clone();
        let mut factors: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for i in 0..self.vars.n {
            for j in (i + 1)..self.vars.n {
                while let Some(quo) = rest.div_diff(i, j) {
                    rest = quo;
                    *factors.entry((i, j)).or_insert(0) += 1;
                }
            }
        }
        let c = rest.as_constant()?;
        let num = Self::den_poly(self.vars, &self.den).scale(&c.recip());
        Some(Self::normalize(self.vars, num, factors))
    }

    /// `true` iff the reduced denominator has no `(z_i - z_j)` factor.
    pub fn is_regular_in(&self, i: usize, j: usize) -> Result<bool, crate::Error> {
        if i == j {
            return Err(crate::Error::Domain(format!("regularity needs two distinct indices, got {i} twice")));
        }
        Ok(self.den_exponent(i, j) == 0)
    }

    /// Degree of the numerator in `z_k` is below the total `z_k`-degree of the denominator.
    pub fn vanishes_at_infinity_in(&self, k: usize) -> bool {
        if self.is_zero() {
            return true;
        }
        let num_deg = self.num.degree_in(k).unwrap_or(0);
        let den_deg: u32 = self.den.iter().filter(|((i, j), _)| *i == k || *j == k).map(|(_, &e)| e).sum();
        num_deg < den_deg
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = Self::den_poly(self.vars, &self.den).eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Re-home in a ring with more variables: variable `k` goes to `map[k]`.
    /// The map must be injective; reversed differences pick up their sign.
    pub fn rename(&self, vars: Vars, map: &[usize]) -> Self {
        let num = self.num.rename(vars.n, map);
        let den: Vec<_> = self.den.iter().map(|(&(i, j), &e)| ((map[i], map[j]), e)).collect();
        Self::normalize(vars, num, den)
    }

    /// Include into the ring with one extra variable at the end.
    pub fn extend(&self, vars: Vars) -> Self {
        assert!(vars.n > self.vars.n);
        let map: Vec<usize> = (0..self.vars.n).collect();
        self.rename(vars, &map)
    }

    /// Does the variable `k` occur at all?
    pub fn involves(&self, k: usize) -> bool {
        self.num.degree_in(k).unwrap_or(0) > 0 || self.den.keys().any(|&(i, j)| i == k || j == k)
    }

    /// Drop the last variable, which must not occur.
    pub fn drop_last(&self, vars: Vars) -> Self {
        assert_eq!(vars.n + 1, self.vars.n);
        RatFrac { vars, num: self.num.drop_last_var(), den: self.den.clone() }
    }

    fn den_string(&self) -> String {
        let names = self.vars.names();
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(&(i, j), &e)| {
                let base = format!("({}-{})", names[i], names[j]);
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join("*"))
        }
    }

    /// True when the rendering is a single signed product with no top-level `+`/`-`
    /// beyond a leading sign, so it can sit in a product without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.num.len() <= 1
    }

    /// Render as a factor of a product: parenthesized unless atomic and positive.
    pub fn render_factor(&self) -> String {
        let s = self.to_string();
        let leading_neg = self.num.len() == 1 && self.num.terms().next().unwrap().1.is_negative();
        if self.is_atomic() && !leading_neg {
            s
        } else {
            format!("({s})")
        }
    }
}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.render(&self.vars.names());
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        if self.num.len() == 1 {
            write!(f, "{num}/{}", self.den_string())
        } else {
            write!(f, "({num})/{}", self.den_string())
        }
    }
}

impl super::Coefficient for RatFrac {
    fn is_zero(&self) -> bool {
        RatFrac::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        RatFrac::zero(self.vars)
    }
    fn add(&self, other: &Self) -> Self {
        RatFrac::add(self, other)
    }
    fn neg(&self) -> Self {
        RatFrac::neg(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        RatFrac::scale(self, q)
    }
}

impl super::CoeffRing for RatFrac {
    fn mul(&self, other: &Self) -> Self {
        RatFrac::mul(self, other)
    }
    fn one_like(&self) -> Self {
        RatFrac::one(self.vars)
    }
}

impl super::RenderCoeff for RatFrac {
    fn render_term(&self, mono: &str) -> (bool, String) {
        let neg = self.num.len() == 1 && self.num.terms().next().unwrap().1.is_negative();
        let abs = if neg { self.neg() } else { self.clone() };
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.as_constant().is_some_and(|c| c.is_one()) {
            mono.to_string()
        } else {
            format!("{}*{mono}", abs.render_factor())
        };
        (neg, body)
    }
}

/// Laurent expansion of `f` in the small local variable `x = z_a - z_b`, where
/// `z_a` is the last variable of `f`'s ring, holding the others fixed.
///
/// The coefficients live in the ring without `z_a`; every exponent below `k`
/// is exact.
pub fn laurent_expand(f: &RatFrac, b: usize, k: i32, local: &str) -> LaurentSeries<RatFrac> {
    let vars = f.vars;
    let a = vars.n - 1;
    assert!(b < a, "base variable must differ from the expanded one");
    let target = Vars::plain(a);
    if f.is_zero() {
        return LaurentSeries::zero(local, k, RatFrac::zero(target));
    }
    // Pole order along x.
    let pole = f.den_exponent(b, a) as i32;
    // Terms below relative order `rel` are needed.
    let rel = k + pole;
    if rel <= 0 {
        return LaurentSeries::zero(local, k, RatFrac::zero(target));
    }
    let rel_u = rel as usize;

    // Numerator as a polynomial in x.
    let mut series: Vec<RatFrac> = vec![RatFrac::zero(target); rel_u];
    for (d, c) in f.num.shift_last(b) {
        if (d as usize) < rel_u {
            series[d as usize] = RatFrac::poly(target, c);
        }
    }
    let mul_trunc = |a: &[RatFrac], b: &[RatFrac]| -> Vec<RatFrac> {
        let mut out = vec![RatFrac::zero(target); rel_u];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if i + j >= rel_u {
                    break;
                }
                if y.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    };
    let mut constant = RatFrac::one(target);
    for (&(i, j), &e) in &f.den {
        if j != a {
            constant = constant.mul(&RatFrac::normalize(target, MultiPoly::one(a), [((i, j), e)]));
            continue;
        }
        if i == b {
            // (z_b - z_a)^{-e} = (-x)^{-e}
            if e % 2 == 1 {
                constant = constant.neg();
            }
            continue;
        }
        // (z_i - z_a)^{-e} = ((z_i - z_b) - x)^{-e}
        //                  = sum_m C(e+m-1, m) x^m (z_i - z_b)^{-e-m}
        let fac: Vec<RatFrac> = (0..rel_u)
            .map(|m| {
                RatFrac::normalize(target, MultiPoly::one(a), [((i, b), e + m as u32)])
                    .scale(&binomial((e as u64) + m as u64 - 1, m as u64))
            })
            .collect();
        series = mul_trunc(&series, &fac);
    }
    let mut out = LaurentSeries::zero(local, k, RatFrac::zero(target));
    for (d, c) in series.into_iter().enumerate() {
        let c = c.mul(&constant);
        if !c.is_zero() {
            out.insert(d as i32 - pole, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn v2() -> Vars {
        Vars::plain(2)
    }

    #[test]
    fn cancellation_examples() {
        let d = MultiPoly::diff(2, 0, 1);
        let r = RatFrac::normalize(v2(), d.pow(2), [((0, 1), 1)]);
        assert_eq!(r, RatFrac::poly(v2(), d.clone()));
        assert!(r.denominator().is_empty());
        let sq = MultiPoly::var(2, 0).pow(2).sub(&MultiPoly::var(2, 1).pow(2));
        let r = RatFrac::normalize(v2(), sq, [((0, 1), 1)]);
        assert_eq!(r, RatFrac::poly(v2(), MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1))));
    }

    #[test]
    fn antisymmetric_sum_vanishes() {
        let a = RatFrac::diff_pow(v2(), 0, 1, -1);
        let b = RatFrac::diff_pow(v2(), 1, 0, -1);
        assert!(a.add(&b).is_zero());
        assert_eq!(RatFrac::diff_pow(v2(), 0, 1, 1).mul(&a), RatFrac::one(v2()));
    }

    #[test]
    fn regularity_and_infinity() {
        let z1 = RatFrac::var(v2(), 0);
        let f = z1.mul(&RatFrac::diff_pow(v2(), 0, 1, -1));
        assert!(!f.is_regular_in(0, 1).unwrap());
        assert!(f.is_regular_in(0, 0).is_err());
        let vw = Vars::with_w(3);
        let g = RatFrac::diff_pow(vw, 2, 0, -1);
        assert!(g.vanishes_at_infinity_in(2));
        let h = RatFrac::var(vw, 2).mul(&g);
        assert!(!h.vanishes_at_infinity_in(2));
    }

    #[test]
    fn geometric_expansion() {
        // 1/(w - z1) at s = 2: sum (-1)^k (z2 - z1)^{-(k+1)} (w - z2)^k
        let vw = Vars::with_w(3);
        let f = RatFrac::diff_pow(vw, 2, 0, -1);
        let s = laurent_expand(&f, 1, 4, "(w-z2)");
        for k in 0..4 {
            let expect = RatFrac::diff_pow(v2(), 1, 0, -(k + 1)).scale(&crate::exact::sign(k % 2 == 1));
            assert_eq!(s.coeff(k).unwrap(), expect, "k = {k}");
        }
        // w -> z_s + (w - z_s)
        let w = RatFrac::var(vw, 2);
        let s = laurent_expand(&w, 0, 3, "(w-z1)");
        assert_eq!(s.coeff(0).unwrap(), RatFrac::var(v2(), 0));
        assert_eq!(s.coeff(1).unwrap(), RatFrac::one(v2()));
        assert!(s.coeff(2).unwrap().is_zero());
        let local = RatFrac::diff_pow(vw, 2, 1, -1);
        let s = laurent_expand(&local, 1, 3, "(w-z2)");
        assert_eq!(s.min_degree(), -1);
        assert_eq!(s.coeff(-1).unwrap(), RatFrac::one(v2()));
        assert_eq!(s.terms().count(), 1);
        assert_eq!(q(1), q(1));
    }
}
