//! The local algebra `C{{z}}` of the formal raviolo.
#![doc = include_str!("../../../../book/src/local.md")]

mod vform;

use num_traits::{One, Zero};
use serde::Serialize;

pub use vform::VForm;

use crate::exact::linalg::Matrix;
use crate::exact::{LaurentSeries, Rational, EXACT};
use crate::{Error, Result};

/// A truncated element of `C((z)) (x) Q[v, dv]`.
pub type LocalElem = LaurentSeries<VForm>;

/// `c * z^k * p(v, dv)`, exact.
pub fn local_term(k: i32, p: VForm) -> LocalElem {
    LaurentSeries::monomial("z", k, p)
}

/// Both endpoint pullbacks `v = 0` and `v = 1` are power series in `z`.
pub fn boundary_check(x: &LocalElem) -> bool {
    x.terms().filter(|(k, _)| *k < 0).all(|(_, p)| p.at(&Rational::zero()).is_zero() && p.at(&Rational::one()).is_zero())
}

/// Split into the strictly negative powers of `z` and the rest.
pub fn split_pm(x: &LocalElem) -> Result<(LocalElem, LocalElem)> {
    if !boundary_check(x) {
        return Err(Error::Boundary(format!("{x} is not in C{{{{z}}}}")));
    }
    let mut minus = LaurentSeries::zero(x.var(), x.precision(), VForm::zero());
    let mut plus = minus.clone();
    for (k, p) in x.terms() {
        if k < 0 {
            minus.insert(k, p.clone());
        } else {
            plus.insert(k, p.clone());
        }
    }
    Ok((minus, plus))
}

/// Is `x` in `C{{z}}_-`: only negative powers, vanishing at both endpoints?
pub fn is_minus(x: &LocalElem) -> bool {
    x.terms().all(|(k, p)| k < 0 && p.minus_coords().is_some())
}

/// Is `x` in `C{{z}}_+`: no negative powers of `z`?
pub fn is_plus(x: &LocalElem) -> bool {
    x.min_degree() >= 0
}

/// The differential, coefficientwise in `v`.
pub fn d(x: &LocalElem) -> LocalElem {
    x.map(VForm::zero(), |p| Some(p.d()))
}

/// `h(f + F dv) = int_0^v F`.
pub fn homotopy_h(x: &LocalElem) -> LocalElem {
    x.map(VForm::zero(), |p| Some(p.h()))
}

/// `k(f + F dv) = int_0^v F - v int_0^1 F`.
pub fn homotopy_k(x: &LocalElem) -> LocalElem {
    x.map(VForm::zero(), |p| Some(p.k()))
}

/// `iota pi_0`: evaluate the 0-form part at `v = 0`, as a constant form.
pub fn iota_pi0(x: &LocalElem) -> LocalElem {
    x.map(VForm::zero(), |p| Some(VForm::constant(p.at(&Rational::zero()))))
}

/// `iota' pi'`: integrate the 1-form part over `[0, 1]`, times `dv`.
pub fn iota_pi_prime(x: &LocalElem) -> LocalElem {
    x.map(VForm::zero(), |p| Some(VForm::power_dt(0).scale(&p.integral())))
}

/// `dh + hd - (id - iota pi_0)`; zero on `C{{z}}_+`.
pub fn sdr_defect_plus(x: &LocalElem) -> LocalElem {
    let lhs = d(&homotopy_h(x)).add(&homotopy_h(&d(x)));
    lhs.sub(&x.sub(&iota_pi0(x)))
}

/// `dk + kd - (id - iota' pi')`; zero on `C{{z}}_-`.
pub fn sdr_defect_minus(x: &LocalElem) -> LocalElem {
    let lhs = d(&homotopy_k(x)).add(&homotopy_k(&d(x)));
    lhs.sub(&x.sub(&iota_pi_prime(x)))
}

/// Truncated cohomology of `C{{z}}`: ranks and representatives.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub h0_rank: usize,
    pub h1_rank: usize,
    pub h0: Vec<String>,
    pub h1: Vec<String>,
    #[serde(skip)]
    pub h0_reps: Vec<LocalElem>,
    #[serde(skip)]
    pub h1_reps: Vec<LocalElem>,
}

/// Exact linear algebra on the window `z^k`, `-K <= k <= K`, with `v`-degree at most `D`.
///
/// Cochains of degree 0 are the boundary-valid `f(v) z^k` with `deg f <= D`; cochains of
/// degree 1 are `F(v) z^k dv` with `deg F <= D - 1`, so that `d` stays inside the window.
pub fn cohomology_truncated(k_window: usize, d_max: usize) -> Result<CohomologyTable> {
    if k_window == 0 || d_max == 0 {
        return Err(Error::Domain("K and D must be at least 1".into()));
    }
    let kw = k_window as i32;
    let powers: Vec<i32> = (-kw..=kw).collect();
    // Degree-0 basis.
    let mut c0: Vec<LocalElem> = Vec::new();
    for &k in &powers {
        if k >= 0 {
            c0.extend((0..=d_max).map(|j| local_term(k, VForm::power(j))));
        } else {
            c0.extend((0..d_max.saturating_sub(1)).map(|m| local_term(k, VForm::e0(m))));
        }
    }
    // Degree-1 basis, and coordinates of a 1-cochain in it.
    let c1: Vec<(i32, usize)> = powers.iter().flat_map(|&k| (0..d_max).map(move |j| (k, j))).collect();
    let coords1 = |x: &LocalElem| -> Vec<Rational> {
        c1.iter()
            .map(|&(k, j)| x.get(k).and_then(|p| p.df.get(j).cloned()).unwrap_or_else(Rational::zero))
            .collect()
    };
    let columns: Vec<Vec<Rational>> = c0.iter().map(|b| coords1(&d(b))).collect();
    let dmat = Matrix::from_columns(c1.len(), &columns);

    let h0_reps: Vec<LocalElem> = dmat
        .kernel()
        .into_iter()
        .map(|v| {
            let mut acc = LaurentSeries::zero("z", EXACT, VForm::zero());
            for (c, b) in v.iter().zip(&c0) {
                acc = acc.add(&b.scale(c));
            }
            acc
        })
        .collect();

    // Complement of the image, chosen greedily among z^k v^j dv in order of v-degree.
    let mut basis = columns.clone();
    let mut rank = dmat.rank();
    let mut h1_reps = Vec::new();
    let mut candidates = c1.clone();
    candidates.sort_by_key(|&(k, j)| (j, k.abs(), k));
    for (k, j) in candidates {
        let cand = local_term(k, VForm::power_dt(j));
        basis.push(coords1(&cand));
        let r = Matrix::from_columns(c1.len(), &basis).rank();
        if r > rank {
            rank = r;
            h1_reps.push(cand);
        } else {
            basis.pop();
        }
    }
    h1_reps.sort_by_key(|x| -x.min_degree());
    let mut h0_reps = h0_reps;
    h0_reps.sort_by_key(|x| x.min_degree());
    let h0_reps: Vec<LocalElem> = h0_reps.into_iter().map(normalize_leading).collect();

    Ok(CohomologyTable {
        k: k_window,
        d: d_max,
        h0_rank: h0_reps.len(),
        h1_rank: h1_reps.len(),
        h0: h0_reps.iter().map(render_local).collect(),
        h1: h1_reps.iter().map(render_local).collect(),
        h0_reps,
        h1_reps,
    })
}

fn normalize_leading(x: LocalElem) -> LocalElem {
    let lead = x.terms().next().map(|(_, p)| p.f.iter().chain(&p.df).find(|c| !c.is_zero()).cloned());
    match lead.flatten() {
        Some(c) if !c.is_one() => x.scale(&(Rational::one() / c)),
        _ => x,
    }
}

/// Render `sum z^k p_k(v, dv)` as `z^k*(...)` terms.
pub fn render_local(x: &LocalElem) -> String {
    let mut parts = Vec::new();
    for (k, p) in x.terms() {
        let zk = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        let body = p.to_string();
        let single = p.f.iter().chain(&p.df).filter(|c| !c.is_zero()).count() == 1;
        parts.push(match (zk.is_empty(), body.as_str()) {
            (true, _) => body.clone(),
            (false, "1") => zk,
            (false, _) if single && !body.starts_with('-') => format!("{zk}*{body}"),
            (false, _) => format!("{zk}*({body})"),
        });
    }
    let mut s = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
    if !x.is_exact() {
        s.push_str(&format!(" + O(z^{})", x.precision()));
    }
    s
}
