use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::diagram::{add_into, SemiCosimplicial, Vector};
use crate::exact::linalg::Matrix;
use crate::exact::{factorial, Rational};
use crate::forms::{pullback_vertex_map, FormSpace, LabelSet, Mono, QForm};

/// `Omega([n])`: polynomial forms on the `n`-simplex, coordinates `t_0 .. t_n`.
pub fn simplex_forms(n: usize) -> Arc<FormSpace> {
    FormSpace::simplex(LabelSet::ordinal(n))
}

/// The vertex map of the coface `delta^j: [n] -> [n+1]` (skip `j`).
fn coface_vertices(n: usize, j: usize) -> Vec<usize> {
    (0..=n).map(|i| if i < j { i } else { i + 1 }).collect()
}

/// A family `(omega_n)`, `omega_n` in `A([n]) (x) Omega([n])`, stored as a map from
/// basis vectors of `A([n])` to forms.
#[derive(Clone, Debug, PartialEq)]
pub struct ThElement {
    comps: Vec<BTreeMap<usize, QForm>>,
}

/// Outcome of [`ThElement::validate`]: the cofaces `(n, j)` where compatibility fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub failures: Vec<(usize, usize)>,
}

impl ThElement {
    pub fn zero(dg: &SemiCosimplicial) -> Self {
        ThElement { comps: vec![BTreeMap::new(); dg.depth() + 1] }
    }

    /// Build from explicit components; zero forms are dropped.
    pub fn from_components(comps: Vec<BTreeMap<usize, QForm>>) -> Self {
        ThElement { comps: comps.into_iter().map(|c| c.into_iter().filter(|(_, f)| !f.is_zero()).collect()).collect() }
    }

    pub fn component(&self, n: usize) -> &BTreeMap<usize, QForm> {
        &self.comps[n]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(BTreeMap::is_empty)
    }

    fn insert(&mut self, n: usize, i: usize, f: QForm) {
        let sum = match self.comps[n].remove(&i) {
            Some(g) => g.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.comps[n].insert(i, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in o.comps.iter().enumerate() {
            for (&i, f) in c {
                out.insert(n, i, f.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ThElement::from_components(self.comps.iter().map(|c| c.iter().map(|(&i, f)| (i, f.scale(s))).collect()).collect())
    }

    /// The family `omega_n = A(vertex)(a) (x) 1`, for `a` whose images under all
    /// vertex maps `[0] -> [n]` agree.
    pub fn constant(dg: &SemiCosimplicial, a: &Vector) -> Self {
        let mut out = Self::zero(dg);
        let mut cur = a.clone();
        for n in 0..=dg.depth() {
            let sp = simplex_forms(n);
            for (&i, c) in &cur {
                out.insert(n, i, QForm::q(&sp, c.clone()));
            }
            if n < dg.depth() {
                cur = dg.coface(n, n + 1).apply(&cur);
            }
        }
        out
    }

    /// Compatibility with every coface: `(A(d_j) (x) id) omega_n = (id (x) Omega(delta^j)) omega_{n+1}`.
    pub fn validate(&self, dg: &SemiCosimplicial) -> Validation {
        let mut failures = Vec::new();
        for n in 0..dg.depth() {
            for j in 0..=n + 1 {
                if self.coface_defect(dg, n, j).iter().any(|(_, f)| !f.is_zero()) {
                    failures.push((n, j));
                }
            }
        }
        Validation { valid: failures.is_empty(), failures }
    }

    fn coface_defect(&self, dg: &SemiCosimplicial, n: usize, j: usize) -> BTreeMap<usize, QForm> {
        let sp = simplex_forms(n);
        let mut out: BTreeMap<usize, QForm> = BTreeMap::new();
        let mut put = |k: usize, f: QForm| {
            let e = out.entry(k).or_insert_with(|| QForm::zero(&sp, Rational::zero()));
            *e = e.add(&f);
        };
        for (&i, f) in &self.comps[n] {
            for (&k, c) in &dg.coface(n, j).images[i] {
                put(k, f.scale(c));
            }
        }
        let phi = coface_vertices(n, j);
        let source = LabelSet::ordinal(n);
        for (&k, f) in &self.comps[n + 1] {
            let face = pullback_vertex_map(f, 0, &phi, &source).expect("an ordinal coface");
            put(k, face.neg());
        }
        out
    }

    /// The de Rham differential, levelwise.
    pub fn d(&self) -> Self {
        ThElement::from_components(self.comps.iter().map(|c| c.iter().map(|(&i, f)| (i, f.d())).collect()).collect())
    }

    /// Levelwise product in `A([n]) (x) Omega([n])`.
    pub fn mul(&self, o: &Self, dg: &SemiCosimplicial) -> Self {
        let mut out = Self::zero(dg);
        for n in 0..self.comps.len() {
            for (&i, f) in &self.comps[n] {
                for (&j, g) in &o.comps[n] {
                    let fg = f.mul(g);
                    for (k, c) in dg.level(n).mul_basis(i, j) {
                        out.insert(n, k, fg.scale(&c));
                    }
                }
            }
        }
        out
    }

    /// The part of form degree `k`.
    pub fn degree_part(&self, k: u32) -> Self {
        ThElement::from_components(self.comps.iter().map(|c| c.iter().map(|(&i, f)| (i, f.part_of_degree(k))).collect()).collect())
    }

    /// Integration over the simplices: the cochain whose level-`n` component is
    /// `int_{Delta^n}` of the top-degree part of `omega_n`, oriented by `dt_1 ... dt_n`.
    pub fn integrate(&self) -> Vec<Vector> {
        self.comps
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let mut v = Vector::new();
                for (&i, f) in c {
                    add_into(&mut v, i, integrate_top(f, n));
                }
                v
            })
            .collect()
    }
}

/// `int_{Delta^n} f` for the degree-`n` part of `f` on `Omega([n])`.
///
/// Canonical forms use `t_0 .. t_{n-1}` with `t_n` eliminated, and
/// `dt_1 ... dt_n = (-1)^n dt_0 ... dt_{n-1}`.
pub fn integrate_top(f: &QForm, n: usize) -> Rational {
    let top = (1u64 << n) - 1;
    let orient = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let mut total = Rational::zero();
    for (m, c) in f.terms() {
        if m.wedge != top {
            continue;
        }
        total += c * &orient * simplex_integral(&m.exps, n);
    }
    total
}

/// `int t_0^{a_0} ... t_{n-1}^{a_{n-1}} dt_0 ... dt_{n-1}` over the standard simplex:
/// `prod a_i! / (sum a_i + n)!`.
pub fn simplex_integral(exps: &[u16], n: usize) -> Rational {
    let num = exps.iter().fold(Rational::one(), |acc, &a| acc * factorial(a as u64));
    let total: u64 = exps.iter().map(|&a| a as u64).sum::<u64>() + n as u64;
    num / factorial(total)
}

/// Canonical monomials of `Omega^k([n])` with polynomial degree plus `k` at most `dmax`.
fn form_basis(n: usize, k: usize, dmax: usize) -> Vec<Mono> {
    if k > n || k > dmax {
        return Vec::new();
    }
    let mut exps_all: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..n {
        exps_all = exps_all
            .into_iter()
            .flat_map(|e| {
                let used: usize = e.iter().map(|&x| x as usize).sum();
                (0..=(dmax - k - used) as u16).map(move |a| {
                    let mut e2 = e.clone();
                    e2.push(a);
                    e2
                })
            })
            .collect();
    }
    let wedges: Vec<u64> = (0u64..(1 << n)).filter(|w| w.count_ones() as usize == k).collect();
    exps_all.into_iter().flat_map(|e| wedges.iter().map(move |&w| Mono { exps: e.clone(), wedge: w })).collect()
}

/// The truncated `Th^k`: a basis of compatible families of form degree `k` whose
/// polynomial degree plus form degree stays at most `dmax`.
pub fn th_basis(dg: &SemiCosimplicial, k: usize, dmax: usize) -> Vec<ThElement> {
    // Coordinates: (level, basis vector, form monomial).
    let mut coords: Vec<(usize, usize, Mono)> = Vec::new();
    for n in 0..=dg.depth() {
        for m in form_basis(n, k, dmax) {
            for i in 0..dg.level(n).dim() {
                coords.push((n, i, m.clone()));
            }
        }
    }
    let unit = |&(n, i, ref m): &(usize, usize, Mono)| -> ThElement {
        let mut comps = vec![BTreeMap::new(); dg.depth() + 1];
        comps[n].insert(i, QForm::term(&simplex_forms(n), m.clone(), Rational::one()));
        ThElement { comps }
    };
    // Constraint rows: every coface defect, in a fixed enumeration of monomials.
    let mut rows: BTreeMap<(usize, usize, usize, Mono), usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
    for c in &coords {
        let e = unit(c);
        let mut col = Vec::new();
        for n in 0..dg.depth() {
            for j in 0..=n + 1 {
                for (k2, f) in e.coface_defect(dg, n, j) {
                    for (m, v) in f.terms() {
                        let next = rows.len();
                        let r = *rows.entry((n, j, k2, m.clone())).or_insert(next);
                        col.push((r, v.clone()));
                    }
                }
            }
        }
        cols.push(col);
    }
    let dense: Vec<Vec<Rational>> = cols
        .iter()
        .map(|col| {
            let mut v = vec![Rational::zero(); rows.len()];
            for (r, x) in col {
                v[*r] += x;
            }
            v
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..coords.len()).map(|i| (0..coords.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
    } else {
        Matrix::from_columns(rows.len(), &dense).kernel()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut acc = ThElement::zero(dg);
            for (c, x) in coords.iter().zip(&v) {
                if !x.is_zero() {
                    acc = acc.add(&unit(c).scale(x));
                }
            }
            acc
        })
        .collect()
}

fn rank_of_d(basis: &[ThElement]) -> usize {
    // Coordinates of d(x) for x in Th^k, in Th^{k+1}'s ambient monomials.
    let mut index: BTreeMap<(usize, usize, Mono), usize> = BTreeMap::new();
    let images: Vec<Vec<(usize, Rational)>> = basis
        .iter()
        .map(|x| {
            let dx = x.d();
            let mut col = Vec::new();
            for (n, c) in dx.comps.iter().enumerate() {
                for (&i, f) in c {
                    for (m, v) in f.terms() {
                        let next = index.len();
                        let r = *index.entry((n, i, m.clone())).or_insert(next);
                        col.push((r, v.clone()));
                    }
                }
            }
            col
        })
        .collect();
    if index.is_empty() {
        return 0;
    }
    let dense: Vec<Vec<Rational>> = images
        .iter()
        .map(|col| {
            let mut v = vec![Rational::zero(); index.len()];
            for (r, x) in col {
                v[*r] += x;
            }
            v
        })
        .collect();
    Matrix::from_columns(index.len(), &dense).rank()
}

/// Cohomology ranks of the truncated Thom-Sullivan complex.
pub fn th_ranks(dg: &SemiCosimplicial, dmax: usize) -> Vec<usize> {
    let bases: Vec<Vec<ThElement>> = (0..=dg.depth()).map(|k| th_basis(dg, k, dmax)).collect();
    let dr: Vec<usize> = (0..=dg.depth()).map(|k| rank_of_d(&bases[k])).collect();
    (0..=dg.depth()).map(|k| bases[k].len() - dr[k] - if k > 0 { dr[k - 1] } else { 0 }).collect()
}
