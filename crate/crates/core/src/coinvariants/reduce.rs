use super::backend::Backend;
use super::site::{ModuleKind, SiteVal};
use super::state::TensorState;
use crate::envelope::{pole_depth, Gen, PlusGen};
use crate::exact::{sign, Coefficient, Rational};
use crate::{Error, Result};

/// Replace the outermost lowering generator `X` at site `s` (1-based) of one basis
/// term by minus the action of the rest of `g_s(X)` on the other sites, adding the
/// result to `out`.
///
/// With `P_{<t}` the parity of the vectors left of site `t` (after removing `X`),
/// a term `w * p` of the expansion at `t` enters with sign `-(-1)^{|X| P_{<s} + |p| P_{<t}}`.
pub fn swap_at_site<B: Backend>(b: &B, key: &[SiteVal], c: &B::C, s: usize, out: &mut TensorState<B::C>) -> Result<()> {
    let sites = out.sites().to_vec();
    let si = s - 1;
    let SiteVal::Vac(mono) = &key[si] else {
        return Err(Error::State(format!("site z{s} carries no lowering generator")));
    };
    let Some((x, rest)) = mono.split_first() else {
        return Err(Error::State(format!("site z{s} carries no lowering generator")));
    };
    let mut base = key.to_vec();
    base[si] = SiteVal::Vac(rest.to_vec());
    let prefix: Vec<bool> = base
        .iter()
        .scan(false, |acc, v| {
            let before = *acc;
            *acc ^= v.odd();
            Some(before)
        })
        .collect();
    let env = b.env();
    for (ti, site) in sites.iter().enumerate() {
        let t = ti + 1;
        let depth = match (&site.kind, &base[ti]) {
            (ModuleKind::Trivial, _) => continue,
            (ModuleKind::Vacuum, SiteVal::Vac(m)) => pole_depth(m),
            (ModuleKind::FiniteDim(_), _) => 1,
            _ => return Err(Error::State(format!("vector at z{t} does not match its module"))),
        };
        if depth == 0 {
            continue;
        }
        for term in b.expansion(s, x, t, depth)?.iter() {
            let s_sign = sign(!(x.odd() && prefix[si]) ^ (term.deg == 1 && prefix[ti]));
            let coeff = b.times(c, &term.coeff);
            if coeff.is_zero() {
                continue;
            }
            match (&site.kind, &base[ti]) {
                (ModuleKind::Vacuum, SiteVal::Vac(m)) => {
                    let g = Gen::Plus(PlusGen::new(x.lie as usize, term.j, term.deg, term.e));
                    for (m2, c2) in env.act_gen(&g, m).into_terms() {
                        let mut k2 = base.clone();
                        k2[ti] = SiteVal::Vac(m2);
                        out.insert(k2, coeff.scale(&(&s_sign * c2)));
                    }
                }
                (ModuleKind::FiniteDim(fm), SiteVal::Basis(col)) => {
                    let chi = fm.character(term.j, term.deg, term.e);
                    if chi == Rational::from_integer(0.into()) {
                        continue;
                    }
                    for (row, c2) in fm.act(x.lie as usize, *col) {
                        let mut k2 = base.clone();
                        k2[ti] = SiteVal::Basis(row);
                        out.insert(k2, coeff.scale(&(&s_sign * &chi * c2)));
                    }
                }
                _ => unreachable!("checked above"),
            }
        }
    }
    Ok(())
}

/// Eliminate every lowering generator, highest site first, outermost generator first.
pub fn reduce<B: Backend>(b: &B, state: &TensorState<B::C>) -> Result<TensorState<B::C>> {
    let order: Vec<usize> = (1..=state.sites().len()).rev().collect();
    reduce_in_order(b, state, &order)
}

/// [`reduce`] with an explicit site order (1-based, each site once).
pub fn reduce_in_order<B: Backend>(b: &B, state: &TensorState<B::C>, order: &[usize]) -> Result<TensorState<B::C>> {
    let n = state.sites().len();
    let mut seen = vec![false; n];
    for &s in order {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::State(format!("invalid site order {order:?}")));
        }
    }
    if seen.contains(&false) {
        return Err(Error::State(format!("site order {order:?} misses a site")));
    }
    if b.n() != n {
        return Err(Error::State(format!("backend for {} sites used on {n}", b.n())));
    }
    let mut cur = state.clone();
    for &s in order {
        loop {
            let mut next = TensorState::zero(cur.sites(), cur.zero_coeff().clone())?;
            let mut pending = Vec::new();
            for (k, c) in cur.into_terms() {
                if k[s - 1].lowering_count() > 0 {
                    pending.push((k, c));
                } else {
                    next.insert(k, c);
                }
            }
            if pending.is_empty() {
                cur = next;
                break;
            }
            for (k, c) in &pending {
                swap_at_site(b, k, c, s, &mut next)?;
            }
            cur = next;
        }
    }
    Ok(cur)
}
