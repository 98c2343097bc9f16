//! Shared fixtures for the integration tests and the acceptance runner.
#![allow(dead_code)]

pub mod gens;

use raviolo::envelope::{is_canonical, Envelope, FieldElement, MinusGen, Monomial, VacVec};
use raviolo::exact::{q, Rational, EXACT};

pub const E: usize = 0;
pub const H: usize = 1;
pub const F: usize = 2;

/// The fixed six-generator pool: three odd, three even, pole orders 1 and 2.
pub fn raviolo_pool() -> Vec<MinusGen> {
    vec![
        MinusGen::new(E, 1, 1, 0),
        MinusGen::new(F, 1, 0, 0),
        MinusGen::new(H, 2, 1, 0),
        MinusGen::new(E, 2, 0, 0),
        MinusGen::new(F, 1, 1, 1),
        MinusGen::new(H, 1, 0, 1),
    ]
}

/// Classical pool: `a_{-1}, a_{-2}` for `a` in `e, h, f`.
pub fn classical_pool() -> Vec<MinusGen> {
    (1..=2).flat_map(|k| [E, H, F].map(|a| MinusGen::classical(a, k))).collect()
}

/// Every PBW monomial of length `<= n` over `pool`.
pub fn pbw_monomials(pool: &[MinusGen], n: usize) -> Vec<Monomial> {
    let mut sorted = pool.to_vec();
    sorted.sort();
    let mut out: Vec<Monomial> = vec![Vec::new()];
    let mut frontier: Vec<Monomial> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &sorted {
                if m.last().map_or(true, |l| l <= g) {
                    let mut m2 = m.clone();
                    m2.push(*g);
                    if is_canonical(&m2) {
                        next.push(m2);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn mono_vec(m: &Monomial) -> VacVec {
    VacVec::monomial(m.clone(), q(1))
}

/// The classical state-field map assembled from an independent source of mode
/// coefficients, using the explicit unshuffle sum (all generators even).
pub fn classical_explicit_oracle(
    env: &Envelope,
    a: &Monomial,
    b: &VacVec,
    precision: i32,
    coeffs: &dyn Fn(u16, usize) -> (Vec<Rational>, Vec<Rational>),
) -> FieldElement {
    use raviolo::envelope::{unshuffles, Gen, PlusGen};
    let mut out = FieldElement::zero(precision);
    for (mu, nu) in unshuffles(a.len()) {
        let mut f = FieldElement::from_vec(b, EXACT);
        for &i in &nu {
            let g = a[i];
            let depth = f.terms().map(|(_, m, _)| raviolo::envelope::pole_depth(m)).max().unwrap_or(0) as usize;
            let (_, minus) = coeffs(g.k, depth);
            let mut next = FieldElement::zero(EXACT);
            for (x, m, w) in f.terms() {
                for (j, c) in minus.iter().enumerate() {
                    let v = env.act_gen(&Gen::Plus(PlusGen::new(g.lie as usize, j as u16, 0, 0)), m);
                    for (m2, c2) in v.into_terms() {
                        next.insert(x - j as i32 - g.k as i32, m2, w.scale(&(c * &c2)));
                    }
                }
            }
            f = next;
        }
        for &i in mu.iter().rev() {
            let g = a[i];
            let lo = f.min_degree();
            let jmax = (precision - lo).max(0) as usize;
            let (plus, _) = coeffs(g.k, jmax);
            let mut next = FieldElement::zero(precision);
            for (x, m, w) in f.terms() {
                for (j, c) in plus.iter().enumerate() {
                    let v = env.act_gen(&Gen::Minus(MinusGen::classical(g.lie as usize, g.k + j as u16)), m);
                    for (m2, c2) in v.into_terms() {
                        next.insert(x + j as i32, m2, w.scale(&(c * &c2)));
                    }
                }
            }
            f = next;
        }
        out = out.add(&f.truncate(precision));
    }
    out
}
