use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::lie::LieData;
use super::vacuum::{Monomial, VacVec};
use crate::exact::Rational;
use crate::local::VForm;

/// Which loop algebra: the raviolo one `g (x) C{{z}}`, or the classical
/// `g (x) C((z))` (all forms trivial, all generators even).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Raviolo,
    Classical,
}

/// A lowering generator `a (x) z^{-k} e`, where `e = v^{m+1}(1-v)` (degree 0)
/// or `e = v^m dv` (degree 1). In the classical flavor `deg = m = 0` and the form is 1.
///
/// Field order gives the PBW order: degree, then `m`, then `k`, then the Lie index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinusGen {
    pub deg: u8,
    pub m: u16,
    pub k: u16,
    pub lie: u16,
}

/// A raising generator `a (x) z^n v^j` (degree 0) or `a (x) z^n v^j dv` (degree 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlusGen {
    pub n: u16,
    pub deg: u8,
    pub j: u16,
    pub lie: u16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Minus(MinusGen),
    Plus(PlusGen),
}

impl MinusGen {
    pub fn new(lie: usize, k: u16, deg: u8, m: u16) -> Self {
        assert!(k >= 1 && deg <= 1);
        MinusGen { deg, m, k, lie: lie as u16 }
    }

    /// The classical generator `a_{-k} = a (x) z^{-k}`.
    pub fn classical(lie: usize, k: u16) -> Self {
        Self::new(lie, k, 0, 0)
    }

    pub fn odd(&self) -> bool {
        self.deg == 1
    }
}

impl PlusGen {
    pub fn new(lie: usize, n: u16, deg: u8, j: u16) -> Self {
        PlusGen { n, deg, j, lie: lie as u16 }
    }
}

impl Gen {
    pub fn odd(&self) -> bool {
        match self {
            Gen::Minus(g) => g.deg == 1,
            Gen::Plus(g) => g.deg == 1,
        }
    }
}

/// A sparse element of the loop algebra as a sum of `coeff * generator`.
pub type LoopElem = Vec<(Gen, Rational)>;

/// Memo table for generator actions on PBW monomials, shared between clones.
pub(super) type ActCache = Arc<Mutex<HashMap<(Gen, Monomial), VacVec>>>;

/// The loop algebra of a Lie algebra in a chosen flavor.
#[derive(Clone)]
pub struct Envelope {
    pub lie: LieData,
    pub flavor: Flavor,
    pub(super) cache: ActCache,
}

impl PartialEq for Envelope {
    fn eq(&self, o: &Self) -> bool {
        self.lie == o.lie && self.flavor == o.flavor
    }
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope").field("lie", &self.lie).field("flavor", &self.flavor).finish()
    }
}

impl Envelope {
    pub fn new(lie: LieData, flavor: Flavor) -> Self {
        Envelope { lie, flavor, cache: ActCache::default() }
    }

    pub fn raviolo_sl2() -> Self {
        Self::new(LieData::sl2(), Flavor::Raviolo)
    }

    pub fn classical_sl2() -> Self {
        Self::new(LieData::sl2(), Flavor::Classical)
    }

    /// The v-form carried by a minus generator.
    pub fn minus_form(&self, g: &MinusGen) -> VForm {
        match (self.flavor, g.deg) {
            (Flavor::Classical, _) => VForm::one(),
            (_, 0) => VForm::e0(g.m as usize),
            _ => VForm::e1(g.m as usize),
        }
    }

    pub fn plus_form(&self, g: &PlusGen) -> VForm {
        match (self.flavor, g.deg) {
            (Flavor::Classical, _) => VForm::one(),
            (_, 0) => VForm::power(g.j as usize),
            _ => VForm::power_dt(g.j as usize),
        }
    }

    /// `(lie, z-power, v-form)` of a generator.
    pub fn term(&self, g: &Gen) -> (usize, i32, VForm) {
        match g {
            Gen::Minus(m) => (m.lie as usize, -(m.k as i32), self.minus_form(m)),
            Gen::Plus(p) => (p.lie as usize, p.n as i32, self.plus_form(p)),
        }
    }

    /// Express `a (x) z^p phi(v, dv)` in generators.
    pub fn decompose(&self, lie: usize, p: i32, phi: &VForm) -> LoopElem {
        let mut out = Vec::new();
        if phi.is_zero() {
            return out;
        }
        if self.flavor == Flavor::Classical {
            let c = phi.at(&Rational::zero());
            assert!(phi.degree1().is_zero() && *phi == VForm::constant(c.clone()), "classical forms are constants");
            let g = if p < 0 { Gen::Minus(MinusGen::classical(lie, (-p) as u16)) } else { Gen::Plus(PlusGen::new(lie, p as u16, 0, 0)) };
            out.push((g, c));
            return out;
        }
        if p < 0 {
            let (g0, g1) = phi.minus_coords().expect("negative powers carry forms vanishing at both ends");
            let k = (-p) as u16;
            for (m, c) in g0.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((Gen::Minus(MinusGen::new(lie, k, 0, m as u16)), c));
                }
            }
            for (m, c) in g1.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((Gen::Minus(MinusGen::new(lie, k, 1, m as u16)), c));
                }
            }
        } else {
            for (j, c) in phi.f.iter().enumerate() {
                if !c.is_zero() {
                    out.push((Gen::Plus(PlusGen::new(lie, p as u16, 0, j as u16)), c.clone()));
                }
            }
            for (j, c) in phi.df.iter().enumerate() {
                if !c.is_zero() {
                    out.push((Gen::Plus(PlusGen::new(lie, p as u16, 1, j as u16)), c.clone()));
                }
            }
        }
        out
    }

    /// `[a (x) phi, b (x) psi] = [a, b] (x) phi psi`.
    pub fn bracket(&self, x: &Gen, y: &Gen) -> LoopElem {
        let (a, p, phi) = self.term(x);
        let (b, q, psi) = self.term(y);
        let prod = phi.mul(&psi);
        if prod.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (k, c) in self.lie.bracket(a, b) {
            for (g, d) in self.decompose(*k, p + q, &prod) {
                out.push((g, d * c));
            }
        }
        out
    }

    /// Bracket of two linear combinations.
    pub fn bracket_elems(&self, x: &LoopElem, y: &LoopElem) -> LoopElem {
        let mut out: std::collections::BTreeMap<Gen, Rational> = Default::default();
        for (gx, cx) in x {
            for (gy, cy) in y {
                for (g, c) in self.bracket(gx, gy) {
                    *out.entry(g).or_insert_with(Rational::zero) += c * cx * cy;
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Differential of a generator.
    pub fn d_gen(&self, g: &Gen) -> LoopElem {
        if self.flavor == Flavor::Classical {
            return Vec::new();
        }
        let (a, p, phi) = self.term(g);
        self.decompose(a, p, &phi.d())
    }

    /// Render in the state grammar: `(lower e 2 (dv))`, `(lower e 2)` classically.
    pub fn render_minus(&self, g: &MinusGen) -> String {
        let a = self.lie.name(g.lie as usize);
        match self.flavor {
            Flavor::Classical => format!("(lower {a} {})", g.k),
            Flavor::Raviolo => format!("(lower {a} {} ({}))", g.k, self.minus_form(g)),
        }
    }

    /// Render in the state grammar: `(raise e 0 (v^2))`, `(raise e 3)` classically.
    pub fn render_plus(&self, g: &PlusGen) -> String {
        let a = self.lie.name(g.lie as usize);
        match self.flavor {
            Flavor::Classical => format!("(raise {a} {})", g.n),
            Flavor::Raviolo => format!("(raise {a} {} ({}))", g.n, self.plus_form(g)),
        }
    }

    pub fn render_gen(&self, g: &Gen) -> String {
        match g {
            Gen::Minus(m) => self.render_minus(m),
            Gen::Plus(p) => self.render_plus(p),
        }
    }
}

