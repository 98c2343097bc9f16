use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::gens::{Envelope, Gen, LoopElem, MinusGen};
use crate::exact::{render_sum, Rational, RenderCoeff};

/// A PBW monomial `X_1 ... X_n |0>` with `X_1 <= ... <= X_n`; odd generators never repeat.
pub type Monomial = Vec<MinusGen>;

/// Parity of a monomial.
pub fn mono_parity(m: &[MinusGen]) -> bool {
    m.iter().filter(|g| g.odd()).count() % 2 == 1
}

/// Total pole depth `sum k` of a monomial.
pub fn pole_depth(m: &[MinusGen]) -> u32 {
    m.iter().map(|g| g.k as u32).sum()
}

/// Is the monomial in PBW normal form?
pub fn is_canonical(m: &[MinusGen]) -> bool {
    m.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !w[0].odd()))
}

/// A vector of the vacuum module: a rational combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct VacVec {
    terms: BTreeMap<Monomial, Rational>,
}

impl VacVec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `|0>`.
    pub fn vacuum() -> Self {
        Self::monomial(Vec::new(), Rational::from_integer(1.into()))
    }

    /// `c * m|0>`; `m` must be canonical.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        debug_assert!(is_canonical(&m));
        let mut v = Self::zero();
        v.insert(m, c);
        v
    }

    pub fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[MinusGen]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            self.insert(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &Rational) {
        for (m, c) in &o.terms {
            self.insert(m.clone(), c * s);
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        VacVec { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Parity when homogeneous; `None` for mixed parity. Zero is even.
    pub fn parity(&self) -> Option<bool> {
        let mut ps = self.terms.keys().map(|m| mono_parity(m));
        let first = ps.next().unwrap_or(false);
        ps.all(|p| p == first).then_some(first)
    }

    /// Largest total pole depth among the monomials.
    pub fn depth(&self) -> u32 {
        self.terms.keys().map(|m| pole_depth(m)).max().unwrap_or(0)
    }

    /// Largest number of generators among the monomials.
    pub fn length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

fn sign_of(odd: bool) -> Rational {
    Rational::from_integer(if odd { -1 } else { 1 }.into())
}

impl Envelope {
    /// `g . m|0>` by graded PBW straightening.
    pub fn act_gen(&self, g: &Gen, m: &[MinusGen]) -> VacVec {
        let key = (*g, m.to_vec());
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = self.act_gen_uncached(g, m);
        self.cache.lock().expect("cache poisoned").insert(key, v.clone());
        v
    }

    fn act_gen_uncached(&self, g: &Gen, m: &[MinusGen]) -> VacVec {
        match g {
            Gen::Minus(x) => self.act_minus(x, m),
            Gen::Plus(_) => {
                let Some((y, rest)) = m.split_first() else {
                    return VacVec::zero();
                };
                // P Y rest = [P, Y] rest + (-1)^{|P||Y|} Y (P rest)
                let mut out = self.act_elem_mono(&self.bracket(g, &Gen::Minus(*y)), rest);
                let inner = self.act_gen(g, rest);
                let moved = self.act_gen_vec(&Gen::Minus(*y), &inner);
                out.add_scaled(&moved, &sign_of(g.odd() && y.odd()));
                out
            }
        }
    }

    fn act_minus(&self, x: &MinusGen, m: &[MinusGen]) -> VacVec {
        let one = Rational::from_integer(1.into());
        let Some((y, rest)) = m.split_first() else {
            return VacVec::monomial(vec![*x], one);
        };
        if x < y || (x == y && !x.odd()) {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(*x);
            v.extend_from_slice(m);
            return VacVec::monomial(v, one);
        }
        if x == y {
            return VacVec::zero();
        }
        // X Y rest = (-1)^{|X||Y|} Y (X rest) + [X, Y] rest
        let inner = self.act_minus(x, rest);
        let mut out = self.act_gen_vec(&Gen::Minus(*y), &inner).scale(&sign_of(x.odd() && y.odd()));
        out.add_assign(&self.act_elem_mono(&self.bracket(&Gen::Minus(*x), &Gen::Minus(*y)), rest));
        out
    }

    fn act_elem_mono(&self, x: &LoopElem, m: &[MinusGen]) -> VacVec {
        let mut out = VacVec::zero();
        for (g, c) in x {
            out.add_scaled(&self.act_gen(g, m), c);
        }
        out
    }

    pub fn act_gen_vec(&self, g: &Gen, v: &VacVec) -> VacVec {
        let mut out = VacVec::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.act_gen(g, m), c);
        }
        out
    }

    /// Action of a loop-algebra element on a vector.
    pub fn act(&self, x: &LoopElem, v: &VacVec) -> VacVec {
        let mut out = VacVec::zero();
        for (g, c) in x {
            out.add_scaled(&self.act_gen_vec(g, v), c);
        }
        out
    }

    /// Build `X_1 ... X_n |0>` for arbitrary (unsorted) generators.
    pub fn word(&self, gens: &[MinusGen]) -> VacVec {
        gens.iter().rev().fold(VacVec::vacuum(), |acc, g| self.act_gen_vec(&Gen::Minus(*g), &acc))
    }

    /// The differential of the vacuum module, extended from the generators by the Leibniz rule.
    pub fn differential(&self, v: &VacVec) -> VacVec {
        let mut out = VacVec::zero();
        for (m, c) in v.terms() {
            let mut prefix_odd = false;
            for i in 0..m.len() {
                let dx = self.d_gen(&Gen::Minus(m[i]));
                if !dx.is_empty() {
                    let suffix = VacVec::monomial(m[i + 1..].to_vec(), c.clone());
                    let mut acc = self.act(&dx, &suffix);
                    for g in m[..i].iter().rev() {
                        acc = self.act_gen_vec(&Gen::Minus(*g), &acc);
                    }
                    out.add_scaled(&acc, &sign_of(prefix_odd));
                }
                prefix_odd ^= m[i].odd();
            }
        }
        out
    }

    /// Render a monomial: `(lower e 1 (dv)) (lower f 2 (v - v^2)) |0>`.
    pub fn render_monomial(&self, m: &[MinusGen]) -> String {
        let mut s: Vec<String> = m.iter().map(|g| self.render_minus(g)).collect();
        s.push("|0>".into());
        s.join(" ")
    }

    pub fn render_vec(&self, v: &VacVec) -> String {
        render_sum(v.terms().map(|(m, c)| c.render_term(&self.render_monomial(m))))
    }
}
