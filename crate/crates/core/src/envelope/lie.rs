use num_traits::Zero;

use crate::exact::{q, Rational};
use crate::{Error, Result};

/// A finite-dimensional Lie algebra given by structure constants
/// `[x_i, x_j] = sum_k c^k_{ij} x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieData {
    names: Vec<String>,
    /// `table[i][j]` lists the nonzero `(k, c^k_ij)`.
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

/// Dense square matrices representing basis elements on a module.
pub type RepMatrix = Vec<Vec<Rational>>;

impl LieData {
    /// Build from dense structure constants `c[i][j][k]`, checking antisymmetry and Jacobi.
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Lie("structure constants must be dim x dim x dim".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::Lie(format!("[{},{}] is not antisymmetric", names[i], names[j])));
                    }
                }
            }
        }
        let table: Vec<Vec<Vec<(usize, Rational)>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).filter(|&k| !c[i][j][k].is_zero()).map(|k| (k, c[i][j][k].clone())).collect())
                    .collect()
            })
            .collect();
        let lie = LieData { names, table };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0
                    let mut acc = vec![Rational::zero(); n];
                    for (a, b, cc) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, c1) in lie.bracket(b, cc) {
                            for (l, c2) in lie.bracket(a, *m) {
                                acc[*l] += c1 * c2;
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Lie(format!("Jacobi fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(lie)
    }

    /// `sl_2` with basis `e, h, f`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2() -> Self {
        let mut c = vec![vec![vec![q(0); 3]; 3]; 3];
        let (e, h, f) = (0, 1, 2);
        c[e][f][h] = q(1);
        c[f][e][h] = q(-1);
        c[h][e][e] = q(2);
        c[e][h][e] = q(-2);
        c[h][f][f] = q(-2);
        c[f][h][f] = q(2);
        Self::new(vec!["e".into(), "h".into(), "f".into()], c).expect("sl2 is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    /// Matrices of the adjoint representation: `ad(x_i)_{k j} = c^k_{ij}`.
    pub fn adjoint(&self) -> Vec<RepMatrix> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut m = vec![vec![Rational::zero(); n]; n];
                for j in 0..n {
                    for (k, c) in self.bracket(i, j) {
                        m[*k][j] = c.clone();
                    }
                }
                m
            })
            .collect()
    }

    /// Check `[rho(x_i), rho(x_j)] = sum c^k_ij rho(x_k)`.
    pub fn check_representation(&self, mats: &[RepMatrix]) -> Result<()> {
        if mats.len() != self.dim() {
            return Err(Error::Module(format!("expected {} matrices", self.dim())));
        }
        let d = mats[0].len();
        if mats.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::Module("matrices must be square of equal size".into()));
        }
        let mul = |a: &RepMatrix, b: &RepMatrix| -> RepMatrix {
            (0..d).map(|r| (0..d).map(|c| (0..d).map(|k| &a[r][k] * &b[k][c]).sum()).collect()).collect()
        };
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let ab = mul(&mats[i], &mats[j]);
                let ba = mul(&mats[j], &mats[i]);
                let mut rhs = vec![vec![Rational::zero(); d]; d];
                for (k, c) in self.bracket(i, j) {
                    for r in 0..d {
                        for s in 0..d {
                            rhs[r][s] += c * &mats[*k][r][s];
                        }
                    }
                }
                for r in 0..d {
                    for s in 0..d {
                        if &ab[r][s] - &ba[r][s] != rhs[r][s] {
                            return Err(Error::Module(format!(
                                "bracket relation fails for ({}, {})",
                                self.name(i),
                                self.name(j)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
