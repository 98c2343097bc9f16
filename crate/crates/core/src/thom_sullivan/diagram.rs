use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::linalg::Matrix;
use crate::exact::{q, Rational};
use crate::{Error, Result};

/// A sparse vector in a finite basis.
pub type Vector = BTreeMap<usize, Rational>;

fn push(v: &mut Vector, i: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&i);
    }
}

/// A commutative algebra cut down to a finite basis: products leaving the
/// basis are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncAlg {
    names: Vec<String>,
    unit: Vector,
    table: BTreeMap<(usize, usize), Vector>,
}

impl TruncAlg {
    /// `table[(i, j)]` is `e_i e_j` for `i <= j`; missing entries are zero.
    pub fn new(names: Vec<String>, unit: Vector, table: BTreeMap<(usize, usize), Vector>) -> Result<Self> {
        let n = names.len();
        let bad = |v: &Vector| v.keys().any(|&i| i >= n);
        if bad(&unit) || table.iter().any(|(&(i, j), v)| i > j || j >= n || bad(v)) {
            return Err(Error::Cosimplicial("structure constants leave the basis".into()));
        }
        Ok(TruncAlg { names, unit, table })
    }

    /// Laurent monomials `z^lo, ..., z^hi`.
    pub fn laurent_window(var: &str, lo: i32, hi: i32) -> Self {
        let names = (lo..=hi).map(|k| format!("{var}^{k}")).collect();
        let idx = |k: i32| (lo..=hi).contains(&k).then(|| (k - lo) as usize);
        let mut table = BTreeMap::new();
        for a in lo..=hi {
            for b in a..=hi {
                if let Some(c) = idx(a + b) {
                    table.insert(((a - lo) as usize, (b - lo) as usize), Vector::from([(c, q(1))]));
                }
            }
        }
        let unit = idx(0).map(|i| Vector::from([(i, q(1))])).unwrap_or_default();
        TruncAlg { names, unit, table }
    }

    /// The direct product: blocks multiply among themselves.
    pub fn product(factors: &[TruncAlg]) -> Self {
        let mut names = Vec::new();
        let mut unit = Vector::new();
        let mut table = BTreeMap::new();
        for (fi, f) in factors.iter().enumerate() {
            let off = names.len();
            names.extend(f.names.iter().map(|n| format!("{n}[{fi}]")));
            unit.extend(f.unit.iter().map(|(&i, c)| (i + off, c.clone())));
            for (&(i, j), v) in &f.table {
                table.insert((i + off, j + off), v.iter().map(|(&k, c)| (k + off, c.clone())).collect());
            }
        }
        TruncAlg { names, unit, table }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.table.get(&key).cloned().unwrap_or_default()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, x) in a {
            for (&j, y) in b {
                for (k, z) in self.mul_basis(i, j) {
                    push(&mut out, k, x * y * z);
                }
            }
        }
        out
    }
}

/// A linear map given by the images of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub target_dim: usize,
    pub images: Vec<Vector>,
}

impl LinearMap {
    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, c) in v {
            for (&k, d) in &self.images[i] {
                push(&mut out, k, c * d);
            }
        }
        out
    }

    pub fn compose(&self, then: &LinearMap) -> LinearMap {
        LinearMap { target_dim: then.target_dim, images: self.images.iter().map(|v| then.apply(v)).collect() }
    }
}

/// A semicosimplicial commutative algebra truncated to levels `[0], ..., [L]`.
/// `cofaces[n][j]` is `d_j: A([n]) -> A([n+1])`, `0 <= j <= n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiCosimplicial {
    levels: Vec<TruncAlg>,
    cofaces: Vec<Vec<LinearMap>>,
}

impl SemiCosimplicial {
    /// Checks shapes, multiplicativity on basis pairs and `d_j d_i = d_i d_{j-1}` for `i < j`.
    pub fn new(levels: Vec<TruncAlg>, cofaces: Vec<Vec<LinearMap>>) -> Result<Self> {
        if levels.is_empty() || cofaces.len() + 1 != levels.len() {
            return Err(Error::Cosimplicial("need one coface family per level transition".into()));
        }
        for (n, fam) in cofaces.iter().enumerate() {
            if fam.len() != n + 2 {
                return Err(Error::Cosimplicial(format!("level {n} needs {} cofaces", n + 2)));
            }
            for (j, d) in fam.iter().enumerate() {
                let (src, tgt) = (&levels[n], &levels[n + 1]);
                if d.images.len() != src.dim() || d.target_dim != tgt.dim() || d.images.iter().any(|v| v.keys().any(|&k| k >= tgt.dim())) {
                    return Err(Error::Cosimplicial(format!("d_{j} on level {n} has the wrong shape")));
                }
                for a in 0..src.dim() {
                    for b in a..src.dim() {
                        let lhs = d.apply(&src.mul_basis(a, b));
                        let rhs = tgt.mul(&d.images[a], &d.images[b]);
                        if lhs != rhs {
                            return Err(Error::Cosimplicial(format!("d_{j} on level {n} is not multiplicative on ({a}, {b})")));
                        }
                    }
                }
            }
        }
        let out = SemiCosimplicial { levels, cofaces };
        for n in 0..out.cofaces.len().saturating_sub(1) {
            for j in 1..=n + 2 {
                for i in 0..j {
                    let lhs = out.cofaces[n][i].compose(&out.cofaces[n + 1][j]);
                    let rhs = out.cofaces[n][j - 1].compose(&out.cofaces[n + 1][i]);
                    if lhs != rhs {
                        return Err(Error::Cosimplicial(format!("d_{j} d_{i} != d_{i} d_{} from level {n}", j - 1)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The two-patch cover of the raviolo: `C[[z]] x C[[z]]` over `C((z))`, on the
    /// window `z^-K .. z^K`. Coface `d_j` embeds the factor `1 - j`.
    pub fn rav_cover(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("K must be at least 1".into()));
        }
        let kw = k as i32;
        let plus = TruncAlg::laurent_window("z", 0, kw);
        let level0 = TruncAlg::product(&[plus.clone(), plus]);
        let level1 = TruncAlg::laurent_window("z", -kw, kw);
        let embed = |factor: usize| LinearMap {
            target_dim: level1.dim(),
            images: (0..level0.dim())
                .map(|i| if i / (k + 1) == factor { Vector::from([(i % (k + 1) + k, q(1))]) } else { Vector::new() })
                .collect(),
        };
        let cofaces = vec![vec![embed(1), embed(0)]];
        Self::new(vec![level0, level1], cofaces)
    }

    /// Every level equal to `Q`, every coface the identity.
    pub fn point(depth: usize) -> Result<Self> {
        let one = TruncAlg::laurent_window("z", 0, 0);
        let id = LinearMap { target_dim: 1, images: vec![Vector::from([(0, q(1))])] };
        Self::new(vec![one; depth + 1], (0..depth).map(|n| vec![id.clone(); n + 2]).collect())
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &TruncAlg {
        &self.levels[n]
    }

    pub fn coface(&self, n: usize, j: usize) -> &LinearMap {
        &self.cofaces[n][j]
    }

    /// `sum_j (-1)^j d_j` on a level-`n` cochain.
    pub fn cech_d(&self, n: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        if n >= self.cofaces.len() {
            return out;
        }
        for (j, d) in self.cofaces[n].iter().enumerate() {
            let s = if j % 2 == 0 { q(1) } else { q(-1) };
            for (k, c) in d.apply(v) {
                push(&mut out, k, s.clone() * c);
            }
        }
        out
    }

    fn cech_matrix(&self, n: usize) -> Matrix {
        let rows = self.levels.get(n + 1).map_or(0, TruncAlg::dim);
        let cols: Vec<Vec<Rational>> = (0..self.levels[n].dim())
            .map(|i| {
                let img = self.cech_d(n, &Vector::from([(i, q(1))]));
                (0..rows).map(|r| img.get(&r).cloned().unwrap_or_else(Rational::zero)).collect()
            })
            .collect();
        Matrix::from_columns(rows, &cols)
    }

    /// Ranks of the cohomology of the unnormalized cochain complex.
    pub fn cech_ranks(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.depth()).map(|n| if n < self.depth() { self.cech_matrix(n).rank() } else { 0 }).collect();
        (0..=self.depth())
            .map(|n| self.levels[n].dim() - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect()
    }
}

pub(crate) fn add_into(v: &mut Vector, i: usize, c: Rational) {
    push(v, i, c)
}
