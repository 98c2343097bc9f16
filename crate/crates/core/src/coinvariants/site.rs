use num_traits::{One, Zero};

use crate::envelope::{mono_parity, Envelope, LieData, Monomial, RepMatrix, VacVec};
use crate::exact::Rational;
use crate::{Error, Result};

/// A finite-dimensional module pulled back along the character
/// `f(w) p(v, dv) |-> f(z_i) p(v0, 0)` of the plus algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteModule {
    pub name: String,
    pub basis: Vec<String>,
    mats: Vec<RepMatrix>,
    /// Where the character evaluates `v`; `0` by default.
    pub eval_v: Rational,
}

impl FiniteModule {
    /// Checks that the matrices represent `lie`. `mats[a][row][col]` is the
    /// coefficient of `basis[row]` in `x_a . basis[col]`.
    pub fn new(lie: &LieData, name: &str, basis: Vec<String>, mats: Vec<RepMatrix>) -> Result<Self> {
        lie.check_representation(&mats)?;
        if mats[0].len() != basis.len() {
            return Err(Error::Module(format!("{} basis names for a {}-dimensional module", basis.len(), mats[0].len())));
        }
        Ok(FiniteModule { name: name.into(), basis, mats, eval_v: Rational::zero() })
    }

    pub fn adjoint(lie: &LieData) -> Self {
        let basis = (0..lie.dim()).map(|i| lie.name(i).to_string()).collect();
        Self::new(lie, "adjoint", basis, lie.adjoint()).expect("the adjoint action is a representation")
    }

    /// The same module with the character taken at `v = t`.
    pub fn evaluated_at(mut self, t: Rational) -> Self {
        self.eval_v = t;
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `x_a . b_col` as `(row, coefficient)` pairs.
    pub fn act(&self, a: usize, col: usize) -> Vec<(usize, Rational)> {
        self.mats[a].iter().enumerate().filter(|(_, r)| !r[col].is_zero()).map(|(row, r)| (row, r[col].clone())).collect()
    }

    /// The character value of `(w - z_i)^j v^e dv^deg`.
    pub fn character(&self, j: u16, deg: u8, e: u16) -> Rational {
        if j != 0 || deg != 0 {
            return Rational::zero();
        }
        if e == 0 {
            Rational::one()
        } else {
            num_traits::pow(self.eval_v.clone(), e as usize)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleKind {
    Trivial,
    FiniteDim(FiniteModule),
    Vacuum,
}

/// A marked point `z_index` (1-based) and the module inserted there.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteSpec {
    pub index: usize,
    pub kind: ModuleKind,
}

impl SiteSpec {
    pub fn trivial(index: usize) -> Self {
        SiteSpec { index, kind: ModuleKind::Trivial }
    }

    pub fn vacuum(index: usize) -> Self {
        SiteSpec { index, kind: ModuleKind::Vacuum }
    }

    pub fn finite(index: usize, m: FiniteModule) -> Self {
        SiteSpec { index, kind: ModuleKind::FiniteDim(m) }
    }
}

/// A basis vector at one site.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SiteVal {
    Vac(Monomial),
    Basis(usize),
    Triv,
}

impl SiteVal {
    pub fn odd(&self) -> bool {
        match self {
            SiteVal::Vac(m) => mono_parity(m),
            _ => false,
        }
    }

    /// Number of lowering generators carried.
    pub fn lowering_count(&self) -> usize {
        match self {
            SiteVal::Vac(m) => m.len(),
            _ => 0,
        }
    }

    pub fn render(&self, env: &Envelope, site: &SiteSpec) -> String {
        match (self, &site.kind) {
            (SiteVal::Vac(m), _) => env.render_monomial(m),
            (SiteVal::Basis(i), ModuleKind::FiniteDim(fm)) => fm.basis[*i].clone(),
            (SiteVal::Basis(i), _) => format!("b{i}"),
            (SiteVal::Triv, _) => "1".into(),
        }
    }
}

/// A vector at one site, as a linear combination.
#[derive(Clone, Debug, PartialEq)]
pub enum SiteVector {
    Vac(VacVec),
    Module(Vec<Rational>),
    Triv,
}

impl SiteVector {
    pub fn terms(&self) -> Vec<(SiteVal, Rational)> {
        match self {
            SiteVector::Vac(v) => v.terms().map(|(m, c)| (SiteVal::Vac(m.clone()), c.clone())).collect(),
            SiteVector::Module(c) => c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (SiteVal::Basis(i), x.clone())).collect(),
            SiteVector::Triv => vec![(SiteVal::Triv, Rational::one())],
        }
    }

    /// Check that the vector lives in the module declared at `site`.
    pub fn check(&self, site: &SiteSpec) -> Result<()> {
        match (self, &site.kind) {
            (SiteVector::Vac(_), ModuleKind::Vacuum) | (SiteVector::Triv, ModuleKind::Trivial) => Ok(()),
            (SiteVector::Module(c), ModuleKind::FiniteDim(m)) if c.len() == m.dim() => Ok(()),
            _ => Err(Error::State(format!("vector does not belong to the module at z{}", site.index))),
        }
    }
}
