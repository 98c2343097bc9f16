use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::backend::{ClassicalBackend, ExpandedBackend, RavioloBackend};
use super::reduce::reduce;
use super::site::{SiteSpec, SiteVal, SiteVector};
use super::state::{render_key, TensorState};
use crate::config::{expand_at_unchecked, iota_embed, ConfigForm};
use crate::envelope::{pole_depth, Envelope, Flavor, Gen, MinusGen, PlusGen, VacVec};
use crate::exact::{laurent_expand, sign, Coefficient, LaurentSeries, RatFrac, Rational, Vars};
use crate::forms::{pullback_vertex_map, FormSpace, LabelSet};
use crate::local::VForm;
use crate::{Error, Result};

/// Name of the expansion variable `z_N - z_{N-1}`.
pub const X_VAR: &str = "x";

/// `{u} x S_n`: coefficients of `A_n{{x}}`.
pub fn u_space(n: usize) -> Result<Arc<FormSpace>> {
    Ok(FormSpace::line_times("u", LabelSet::perms(n)?))
}

/// `iota_{z_N -> z_{N-1}}` on one coefficient of `A_N`: exact below `x^precision`.
pub fn expand_coefficient(c: &ConfigForm, precision: i32) -> Result<LaurentSeries<ConfigForm>> {
    let n = c.zero_coeff().vars().n;
    if n < 2 {
        return Err(Error::Domain("expansion needs at least two marked points".into()));
    }
    let target = u_space(n - 1)?;
    let ex = expand_at_unchecked(c, n - 1, precision)?;
    let zero = ConfigForm::zero(&target, RatFrac::zero(Vars::plain(n - 1)));
    let mut out = LaurentSeries::zero(X_VAR, precision, zero);
    for (p, f) in ex.terms() {
        out.insert(p, f.relabel_space(&target)?);
    }
    Ok(out)
}

/// A coinvariant after base change: far-site vectors against series in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Expanded<C> {
    pub far: Vec<SiteSpec>,
    pub precision: i32,
    pub terms: BTreeMap<Vec<SiteVal>, LaurentSeries<C>>,
}

impl<C: Coefficient + std::fmt::Display> Expanded<C> {
    fn new(far: &[SiteSpec], precision: i32) -> Self {
        Expanded { far: far.to_vec(), precision, terms: BTreeMap::new() }
    }

    fn add_series(&mut self, key: Vec<SiteVal>, s: LaurentSeries<C>) {
        let s = s.truncate(self.precision).with_precision(self.precision);
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&s),
            None => s,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn render(&self, env: &Envelope) -> String {
        if self.terms.is_empty() {
            return format!("0 + O(x^{})", self.precision);
        }
        self.terms
            .iter()
            .map(|(k, s)| {
                let key = if k.is_empty() { String::new() } else { format!(" (x) [{}]", render_key(env, &self.far, k)) };
                format!("({s}){key}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn far_key(k: &[SiteVal], far: usize) -> Result<Vec<SiteVal>> {
    if k[far..].iter().any(|v| v.lowering_count() > 0) {
        return Err(Error::State("near sites still carry lowering generators".into()));
    }
    Ok(k[..far].to_vec())
}

/// Base change of a reduced `N`-site raviolo representative with vacua at `z_{N-1}, z_N`.
pub fn expand_coinvariant(rep: &TensorState<ConfigForm>, precision: i32) -> Result<Expanded<ConfigForm>> {
    let n = rep.sites().len();
    let far = n.checked_sub(2).ok_or_else(|| Error::State("need at least two sites".into()))?;
    let mut out = Expanded::new(&rep.sites()[..far], precision);
    for (k, c) in rep.terms() {
        out.add_series(far_key(k, far)?, expand_coefficient(c, precision)?);
    }
    Ok(out)
}

/// Outcome of a theorem check: canonical renderings of both sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub precision: i32,
    pub equal: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Far sites `z_1 .. z_{N-2}` with their vectors.
pub type FarSites = [(SiteSpec, SiteVector)];

fn homogeneous(v: &VacVec, what: &str) -> Result<bool> {
    v.parity().ok_or_else(|| Error::State(format!("{what} must be homogeneous")))
}

fn layout(far: &FarSites, near: usize) -> (Vec<SiteSpec>, Vec<SiteVector>) {
    let n = far.len() + near;
    let mut sites: Vec<SiteSpec> = far.iter().map(|(s, _)| s.clone()).collect();
    sites.extend((far.len() + 1..=n).map(SiteSpec::vacuum));
    (sites, far.iter().map(|(_, v)| v.clone()).collect())
}

/// Both sides of the raviolo theorem: the base change of the reduced coinvariant
/// `[m (x) B (x) A]`, and `(-1)^{|A||B|}` times the reduced `[m (x) Y(A; x) B]`.
pub fn verify_theorem(env: &Envelope, a: &VacVec, b: &VacVec, far: &FarSites, precision: i32) -> Result<TheoremReport> {
    if env.flavor != Flavor::Raviolo {
        return Err(Error::State("verify_theorem needs the raviolo envelope".into()));
    }
    let (lhs, rhs) = theorem_sides(env, a, b, far, precision)?;
    Ok(report(env, far.len() + 2, precision, &lhs, &rhs))
}

fn report<C: Coefficient + std::fmt::Display>(env: &Envelope, n: usize, precision: i32, lhs: &Expanded<C>, rhs: &Expanded<C>) -> TheoremReport {
    TheoremReport { n, precision, equal: lhs == rhs, lhs: lhs.render(env), rhs: rhs.render(env) }
}

/// The two sides compared by [`verify_theorem`].
pub fn theorem_sides(env: &Envelope, a: &VacVec, b: &VacVec, far: &FarSites, precision: i32) -> Result<(Expanded<ConfigForm>, Expanded<ConfigForm>)> {
    let pa = homogeneous(a, "A")?;
    let pb = homogeneous(b, "B")?;
    let n = far.len() + 2;
    let (sites, mut vecs) = layout(far, 2);
    vecs.push(SiteVector::Vac(b.clone()));
    vecs.push(SiteVector::Vac(a.clone()));
    let full = RavioloBackend::new(env, n)?;
    let state = TensorState::product(&sites, full.one(), &vecs)?;
    let lhs = expand_coinvariant(&reduce(&full, &state)?, precision)?;

    let y = env.y_recursive(a, b, precision);
    env.check_boundary(&y)?;
    let rhs = reduce_field(env, &y, far, sign(pa && pb), precision)?;
    Ok((lhs, rhs))
}

/// `s * [m (x) F]` for a field element `F` at `z_{N-1}`, reduced term by term.
pub fn reduce_field(env: &Envelope, y: &crate::envelope::FieldElement, far: &FarSites, s: Rational, precision: i32) -> Result<Expanded<ConfigForm>> {
    let n = far.len() + 2;
    let near = RavioloBackend::with_line(env, n - 1, "u")?;
    let (sites, vecs) = layout(far, 1);
    let mut out = Expanded::new(&sites[..far.len()], precision);
    for (p, mono, w) in y.terms() {
        let mut v = vecs.clone();
        v.push(SiteVector::Vac(VacVec::monomial(mono.clone(), Rational::from_integer(1.into()))));
        let state = TensorState::product(&sites, near.line_form(w)?.scale(&s), &v)?;
        for (k, c) in reduce(&near, &state)?.into_terms() {
            out.add_series(far_key(&k, far.len())?, LaurentSeries::monomial(X_VAR, p, c).with_precision(precision));
        }
    }
    Ok(out)
}

/// The classical analogue of [`verify_theorem`] over `B_N`.
pub fn classical_verify(env: &Envelope, a: &VacVec, b: &VacVec, far: &FarSites, precision: i32) -> Result<TheoremReport> {
    if env.flavor != Flavor::Classical {
        return Err(Error::State("classical_verify needs the classical envelope".into()));
    }
    let n = far.len() + 2;
    let (sites, mut vecs) = layout(far, 2);
    vecs.push(SiteVector::Vac(b.clone()));
    vecs.push(SiteVector::Vac(a.clone()));
    let full = ClassicalBackend::new(env, n);
    let rep = classical_take_coinvariants(&full, &sites, &vecs)?;
    let mut lhs = Expanded::new(&sites[..far.len()], precision);
    for (k, c) in rep.terms() {
        lhs.add_series(far_key(k, far.len())?, laurent_expand(c, n - 2, precision, X_VAR));
    }

    let y = env.y_recursive(a, b, precision);
    let near = ClassicalBackend::new(env, n - 1);
    let (sites1, vecs1) = layout(far, 1);
    let mut rhs = Expanded::new(&sites1[..far.len()], precision);
    for (p, mono, w) in y.terms() {
        let c = w.as_constant().ok_or_else(|| Error::State("classical fields carry no forms".into()))?;
        let mut v = vecs1.clone();
        v.push(SiteVector::Vac(VacVec::monomial(mono.clone(), Rational::from_integer(1.into()))));
        let state = TensorState::product(&sites1, near.one().scale(&c), &v)?;
        for (k, c) in reduce(&near, &state)?.into_terms() {
            rhs.add_series(far_key(&k, far.len())?, LaurentSeries::monomial(X_VAR, p, c).with_precision(precision));
        }
    }
    Ok(report(env, n, precision, &lhs, &rhs))
}

/// Classical coinvariants: reduce `1 (x) m_1 (x) ... (x) m_N` over `B_N`.
pub fn classical_take_coinvariants(b: &ClassicalBackend, sites: &[SiteSpec], vecs: &[SiteVector]) -> Result<TensorState<RatFrac>> {
    let state = TensorState::product(sites, b.one(), vecs)?;
    reduce(b, &state)
}

/// Result of trying to drop a bare vacuum at the last site.
#[derive(Clone, Debug, PartialEq)]
pub enum Propagated {
    Dropped(TensorState<ConfigForm>),
    Kept { state: TensorState<ConfigForm>, reason: String },
}

/// Drop a bare `|0>` at `z_N`, re-reading coefficients over `N - 1` points when
/// they lie in the image of `iota_{[1,N-1] subset [1,N]}`.
pub fn propagate_vacuum(state: &TensorState<ConfigForm>) -> Result<Propagated> {
    let n = state.sites().len();
    if n < 2 || state.sites()[n - 1].kind != super::site::ModuleKind::Vacuum {
        return Err(Error::State("the last site must carry the vacuum module".into()));
    }
    let keep = |reason: String| Ok(Propagated::Kept { state: state.clone(), reason });
    if state.terms().any(|(k, _)| k[n - 1] != SiteVal::Vac(Vec::new())) {
        return keep("the last site is not a bare vacuum".into());
    }
    let small = Vars::plain(n - 1);
    let labels = LabelSet::perms(n - 1)?;
    let big = LabelSet::perms(n)?;
    // The face where z_N comes last: sigma |-> sigma followed by N.
    let phi: Vec<usize> = (0..labels.len())
        .map(|l| {
            let mut tau = labels.label(l).to_vec();
            tau.push(n as u8);
            big.index_of(&tau).expect("a permutation")
        })
        .collect();
    let mut out = TensorState::zero(&state.sites()[..n - 1], ConfigForm::zero(&crate::config::simplex_space(n - 1)?, RatFrac::zero(small)))?;
    for (k, c) in state.terms() {
        if c.terms().any(|(_, r)| r.involves(n - 1)) {
            return keep(format!("coefficient depends on z{n}"));
        }
        let face = pullback_vertex_map(c, 0, &phi, &labels)?;
        let pre = face.map_coeffs(RatFrac::zero(small), |r| Some(r.drop_last(small)));
        let back = iota_embed(&(1..n as u8).collect::<Vec<_>>(), n, &pre, Vars::plain(n));
        if back.as_ref() != Ok(c) {
            return keep("coefficient is not pulled back from N-1 points".into());
        }
        out.insert(k[..n - 1].to_vec(), pre);
    }
    Ok(Propagated::Dropped(out))
}

/// The lemma that base change commutes with taking coinvariants, for one state:
/// returns `(reduce then expand, expand then reduce)`.
pub fn base_change_sides(env: &Envelope, state: &TensorState<ConfigForm>, precision: i32) -> Result<(Expanded<ConfigForm>, Expanded<ConfigForm>)> {
    let n = state.sites().len();
    let far = n.checked_sub(2).ok_or_else(|| Error::State("need at least two sites".into()))?;
    let full = RavioloBackend::new(env, n)?;
    let first = expand_coinvariant(&reduce(&full, state)?, precision)?;

    let poles: u32 = state.terms().map(|(k, _)| k.iter().map(|v| if let SiteVal::Vac(m) = v { pole_depth(m) } else { 0 }).sum()).max().unwrap_or(0);
    let working = precision + 2 * poles as i32 + 2;
    let exb = ExpandedBackend::new(env, n, working)?;
    let zero = expand_coefficient(&full.one(), working)?.zero_like();
    let lifted = state.map_coeffs(zero, |c| expand_coefficient(c, working))?;
    let reduced = reduce(&exb, &lifted)?;
    let mut second = Expanded::new(&state.sites()[..far], precision);
    for (k, c) in reduced.terms() {
        if c.precision() < precision {
            return Err(Error::Precision(format!("base change kept x^{} of x^{precision}", c.precision())));
        }
        second.add_series(far_key(k, far)?, c.clone());
    }
    Ok((first, second))
}

/// The documented pool of twelve `sl_2` states of depth at most two.
pub fn state_pool(env: &Envelope) -> Vec<(String, VacVec)> {
    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;
    let g = MinusGen::new;
    let words: Vec<Vec<MinusGen>> = vec![
        vec![],
        vec![g(E, 1, 1, 0)],
        vec![g(F, 1, 0, 0)],
        vec![g(H, 2, 1, 0)],
        vec![g(E, 2, 0, 0)],
        vec![g(F, 1, 1, 1)],
        vec![g(H, 1, 0, 1)],
        vec![g(E, 1, 1, 0), g(F, 1, 1, 0)],
        vec![g(F, 1, 0, 0), g(E, 1, 1, 0)],
        vec![g(H, 1, 0, 0), g(H, 1, 0, 0)],
        vec![g(E, 1, 0, 0), g(F, 2, 1, 0)],
        vec![g(F, 1, 1, 0), g(H, 1, 1, 1)],
    ];
    words
        .into_iter()
        .map(|w| {
            let v = env.word(&w);
            (env.render_vec(&v), v)
        })
        .collect()
}

/// The classical pool: `|0>`, `a_{-1}|0>`, `a_{-2}|0>` and products of two of them.
pub fn classical_state_pool(env: &Envelope) -> Vec<(String, VacVec)> {
    let c = MinusGen::classical;
    let words: Vec<Vec<MinusGen>> = vec![
        vec![],
        vec![c(0, 1)],
        vec![c(1, 1)],
        vec![c(2, 1)],
        vec![c(0, 2)],
        vec![c(2, 2)],
        vec![c(0, 1), c(2, 1)],
        vec![c(1, 1), c(1, 1)],
        vec![c(2, 1), c(0, 2)],
        vec![c(1, 2), c(0, 1)],
        vec![c(0, 1), c(0, 1)],
        vec![c(2, 2), c(1, 1)],
    ];
    words
        .into_iter()
        .map(|w| {
            let v = env.word(&w);
            (env.render_vec(&v), v)
        })
        .collect()
}

/// The worked example: `A = (a (x) dv/z)|0>` inserted at `z_N`, `B` at `z_{N-1}`.
/// Returns the reduced-and-expanded coinvariant and the two-sum display
/// `(-1)^{|B|} [sum_k x^k (a (x) dv/z^{k+1}) B + sum_k d(1-u)/x^{k+1} (a (x) z^k) B]`,
/// each display term reduced over `N - 1` points.
pub fn worked_example(env: &Envelope, a: usize, b: &VacVec, far: &FarSites, precision: i32) -> Result<(Expanded<ConfigForm>, Expanded<ConfigForm>)> {
    let pb = homogeneous(b, "B")?;
    let x = MinusGen::new(a, 1, 1, 0);
    let av = env.word(&[x]);
    let n = far.len() + 2;
    let (sites, mut vecs) = layout(far, 2);
    vecs.push(SiteVector::Vac(b.clone()));
    vecs.push(SiteVector::Vac(av));
    let full = RavioloBackend::new(env, n)?;
    let lhs = expand_coinvariant(&reduce(&full, &TensorState::product(&sites, full.one(), &vecs)?)?, precision)?;

    let mut display = crate::envelope::FieldElement::zero(precision);
    for k in 0..precision.max(0) as u16 {
        for (m, c) in env.act_gen_vec(&Gen::Minus(MinusGen::new(a, k + 1, 1, 0)), b).into_terms() {
            display.insert(k as i32, m, VForm::constant(c));
        }
    }
    let d_one_minus_u = VForm::power_dt(0).neg();
    for k in 0..pole_depth_vec(b) as u16 {
        for (m, c) in env.act_gen_vec(&Gen::Plus(PlusGen::new(a, k, 0, 0)), b).into_terms() {
            display.insert(-(k as i32) - 1, m, d_one_minus_u.scale(&c));
        }
    }
    let rhs = reduce_field(env, &display, far, sign(pb), precision)?;
    Ok((lhs, rhs))
}

fn pole_depth_vec(v: &VacVec) -> u32 {
    v.terms().map(|(m, _)| pole_depth(m)).max().unwrap_or(0)
}
