use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{binomial, Rational};

/// Sparse polynomial over `Q` in a fixed number of variables.
///
/// Terms map exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `z_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    /// `z_i - z_j`.
    pub fn diff(nvars: usize, i: usize, j: usize) -> Self {
        Self::var(nvars, i).sub(&Self::var(nvars, j))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has degree zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial rings differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial rings differ");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Group by the exponent of `z_i`: returns `c_d` with `self = sum_d c_d z_i^d`.
    fn coefficients_in(&self, i: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[i];
            let mut e2 = e.clone();
            e2[i] = 0;
            out.entry(d).or_insert_with(|| Self::zero(self.nvars)).add_term(e2, c.clone());
        }
        out
    }

    fn mul_var_pow(&self, i: usize, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[i] += d;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by `z_i - z_j`, or `None` when it does not divide.
    ///
    /// Synthetic division in `z_i` with root `z_j`.
    pub fn div_diff(&self, i: usize, j: usize) -> Option<Self> {
        assert_ne!(i, j);
        if self.is_zero() {
            return Some(self.clone());
        }
        let coeffs = self.coefficients_in(i);
        let top = *coeffs.keys().next_back().unwrap();
        if top == 0 {
            return None;
        }
        let zj = Self::var(self.nvars, j);
        let zero = Self::zero(self.nvars);
        // b_{d-1} = c_d + z_j b_d, from the top down.
        let mut b = vec![zero.clone(); top as usize];
        let mut carry = zero.clone();
        for d in (1..=top).rev() {
            let cd = coeffs.get(&d).unwrap_or(&zero);
            let bd = cd.add(&zj.mul(&carry));
            b[(d - 1) as usize] = bd.clone();
            carry = bd;
        }
        let c0 = coeffs.get(&0).unwrap_or(&zero);
        let rem = c0.add(&zj.mul(&carry));
        if !rem.is_zero() {
            return None;
        }
        let mut q = Self::zero(self.nvars);
        for (d, bd) in b.iter().enumerate() {
            q = q.add(&bd.mul_var_pow(i, d as u32));
        }
        Some(q)
    }

    /// Substitute `z_i := value`.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Self {
        assert_eq!(value.nvars, self.nvars);
        let mut out = Self::zero(self.nvars);
        let mut powers: Vec<MultiPoly> = vec![Self::one(self.nvars)];
        for (d, c) in self.coefficients_in(i) {
            while powers.len() <= d as usize {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            out = out.add(&c.mul(&powers[d as usize]));
        }
        out
    }

    /// Re-home the polynomial in a ring with `nvars` variables, sending
    /// variable `k` to variable `map[k]`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (k, &x) in e.iter().enumerate() {
                e2[map[k]] += x;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Drop the last variable, which must not occur.
    pub fn drop_last_var(&self) -> Self {
        let n = self.nvars - 1;
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            assert_eq!(e[n], 0, "dropped variable still occurs");
            out.add_term(e[..n].to_vec(), c.clone());
        }
        out
    }

    /// Expand `p(z_a = z_b + x)` as a polynomial in `x`, whose coefficients
    /// live in the ring without `z_a` (which must be the last variable).
    pub fn shift_last(&self, b: usize) -> BTreeMap<u32, MultiPoly> {
        let a = self.nvars - 1;
        assert!(b < a);
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let m = e[a];
            for d in 0..=m {
                let mut e2 = e[..a].to_vec();
                e2[b] += m - d;
                let coef = c * binomial(m as u64, d as u64);
                out.entry(d).or_insert_with(|| Self::zero(a)).add_term(e2, coef);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Terms in graded-lexicographic order, highest first.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Render with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        f.write_str(&self.render(&names))
    }
}
