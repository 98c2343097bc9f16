use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::config::{expand_at_unchecked, g_build, local_space, local_var, simplex_space, ConfigForm};
use crate::envelope::{Envelope, MinusGen};
use crate::exact::{laurent_expand, Coefficient, LaurentSeries, RatFrac, Rational, Vars};
use crate::forms::{FormSpace, Mono};
use crate::local::VForm;
use crate::{Error, Result};

/// One term `coeff * (a (x) (w - z_t)^j v^e dv^deg)` in the expansion of a
/// global element at a site; the Lie part `a` is that of the swapped generator.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm<W> {
    pub j: u16,
    pub deg: u8,
    pub e: u16,
    pub coeff: W,
}

type ExpKey = (usize, MinusGen, usize, u32);
type ExpCache<W> = Mutex<HashMap<ExpKey, Arc<Vec<ExpTerm<W>>>>>;

/// The coefficient ring and global-element expansions used while reducing.
pub trait Backend {
    /// Coefficients of tensor states.
    type C: Coefficient;
    fn env(&self) -> &Envelope;
    /// Number of marked points.
    fn n(&self) -> usize;
    /// Regular part of the expansion at site `t` of `g_s(x)`, below `(w - z_t)^depth`,
    /// with coefficients already in the state ring.
    fn expansion(&self, s: usize, x: &MinusGen, t: usize, depth: u32) -> Result<Arc<Vec<ExpTerm<Self::C>>>>;
    /// `c * w`, coefficient of the state on the left.
    fn times(&self, c: &Self::C, w: &Self::C) -> Self::C;
}

fn cached<W>(cache: &ExpCache<W>, key: ExpKey, compute: impl FnOnce() -> Result<Vec<ExpTerm<W>>>) -> Result<Arc<Vec<ExpTerm<W>>>> {
    if let Some(v) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute()?);
    cache.lock().expect("cache poisoned").insert(key, v.clone());
    Ok(v)
}

/// A v-form as a form on the line block of `space`.
pub fn vform_on_line(f: &VForm, space: &Arc<FormSpace>, block: usize, one: &RatFrac) -> ConfigForm {
    let g = space.offset(block);
    let mut out = ConfigForm::zero(space, one.zero_like());
    let mut put = |coeffs: &[Rational], dv: bool| {
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0u16; space.ngens()];
            exps[g] = i as u16;
            out.insert(Mono { exps, wedge: if dv { 1 << g } else { 0 } }, one.scale(c));
        }
    };
    put(&f.f, false);
    put(&f.df, true);
    out
}

/// Raviolo reduction with coefficients in `A_N`, optionally tensored with an
/// external line `Q[u, du]` placed first.
pub struct RavioloBackend {
    env: Envelope,
    n: usize,
    space: Arc<FormSpace>,
    block: usize,
    cache: ExpCache<ConfigForm>,
}

impl RavioloBackend {
    pub fn new(env: &Envelope, n: usize) -> Result<Self> {
        Ok(RavioloBackend { env: env.clone(), n, space: simplex_space(n)?, block: 0, cache: Default::default() })
    }

    /// Coefficients in `A_N (x) Q[u, du]`, the line named `line`.
    pub fn with_line(env: &Envelope, n: usize, line: &str) -> Result<Self> {
        let space = FormSpace::line_times(line, crate::forms::LabelSet::perms(n)?);
        Ok(RavioloBackend { env: env.clone(), n, space, block: 1, cache: Default::default() })
    }

    pub fn coeff_space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    pub fn one(&self) -> ConfigForm {
        ConfigForm::constant(&self.space, RatFrac::one(Vars::plain(self.n)))
    }

    /// Embed a form on the external line (if any) into the coefficient ring.
    pub fn line_form(&self, f: &VForm) -> Result<ConfigForm> {
        if self.block == 0 {
            return Err(Error::State("no external line in this coefficient ring".into()));
        }
        Ok(vform_on_line(f, &self.space, 0, &RatFrac::one(Vars::plain(self.n))))
    }

    fn compute(&self, s: usize, x: &MinusGen, t: usize, depth: u32) -> Result<Vec<ExpTerm<ConfigForm>>> {
        let n = self.n;
        let one = RatFrac::one(Vars::plain(n));
        let lsp = local_space(n)?;
        let e = vform_on_line(&self.env.minus_form(x), &lsp, 0, &one);
        let local = LaurentSeries::monomial(&local_var(s), -(x.k as i32), e);
        let global = g_build(s, &local)?;
        let mut ex = expand_at_unchecked(&global, t, depth as i32)?;
        if t == s {
            ex = ex.sub(&local);
        }
        let sp = simplex_space(n)?;
        let mut grouped: BTreeMap<(u16, u8, u16), ConfigForm> = BTreeMap::new();
        for (j, form) in ex.terms() {
            if j < 0 {
                return Err(Error::Domain(format!("g_{s} expansion at z{t} has a pole of order {}", -j)));
            }
            for (mono, c) in form.terms() {
                let deg = (mono.wedge & 1) as u8;
                let rest = Mono { exps: mono.exps[1..].to_vec(), wedge: mono.wedge >> 1 };
                // dv ^ du_I = (-1)^{|I|} du_I ^ dv
                let odd = deg == 1 && rest.wedge.count_ones() % 2 == 1;
                let c = if odd { c.neg() } else { c.clone() };
                let w = ConfigForm::term(&sp, rest, c);
                let slot = grouped.entry((j as u16, deg, mono.exps[0])).or_insert_with(|| ConfigForm::zero(&sp, one.zero_like()));
                *slot = slot.add(&w);
            }
        }
        grouped
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|((j, deg, e), w)| {
                let coeff = if self.block == 0 { w } else { w.embed(&self.space, &[self.block])? };
                Ok(ExpTerm { j, deg, e, coeff })
            })
            .collect()
    }
}

impl Backend for RavioloBackend {
    type C = ConfigForm;

    fn env(&self) -> &Envelope {
        &self.env
    }

    fn n(&self) -> usize {
        self.n
    }

    fn expansion(&self, s: usize, x: &MinusGen, t: usize, depth: u32) -> Result<Arc<Vec<ExpTerm<ConfigForm>>>> {
        let key_gen = MinusGen { lie: 0, ..*x };
        cached(&self.cache, (s, key_gen, t, depth), || self.compute(s, &key_gen, t, depth))
    }

    fn times(&self, c: &ConfigForm, w: &ConfigForm) -> ConfigForm {
        c.mul(w)
    }
}

/// Classical reduction over `B_N`: the global element of `a (x) (w - z_s)^{-k}` is itself.
pub struct ClassicalBackend {
    env: Envelope,
    n: usize,
    cache: ExpCache<RatFrac>,
}

impl ClassicalBackend {
    pub fn new(env: &Envelope, n: usize) -> Self {
        ClassicalBackend { env: env.clone(), n, cache: Default::default() }
    }

    pub fn one(&self) -> RatFrac {
        RatFrac::one(Vars::plain(self.n))
    }

    fn compute(&self, s: usize, x: &MinusGen, t: usize, depth: u32) -> Vec<ExpTerm<RatFrac>> {
        if s == t {
            return Vec::new();
        }
        let vars = Vars::with_w(self.n + 1);
        let f = RatFrac::diff_pow(vars, self.n, s - 1, -(x.k as i32));
        laurent_expand(&f, t - 1, depth as i32, &local_var(t))
            .terms()
            .map(|(j, c)| ExpTerm { j: j as u16, deg: 0, e: 0, coeff: c.clone() })
            .collect()
    }
}

impl Backend for ClassicalBackend {
    type C = RatFrac;

    fn env(&self) -> &Envelope {
        &self.env
    }

    fn n(&self) -> usize {
        self.n
    }

    fn expansion(&self, s: usize, x: &MinusGen, t: usize, depth: u32) -> Result<Arc<Vec<ExpTerm<RatFrac>>>> {
        let key_gen = MinusGen { lie: 0, ..*x };
        cached(&self.cache, (s, key_gen, t, depth), || Ok(self.compute(s, &key_gen, t, depth)))
    }

    fn times(&self, c: &RatFrac, w: &RatFrac) -> RatFrac {
        c.mul(w)
    }
}

/// Raviolo reduction after base change: coefficients in `A_{N-1}{{x}}` with
/// `x = z_N - z_{N-1}`, every global expansion pushed through the same base change.
pub struct ExpandedBackend {
    inner: RavioloBackend,
    precision: i32,
    cache: ExpCache<LaurentSeries<ConfigForm>>,
}

impl ExpandedBackend {
    /// Expansions are carried to `precision` powers of `x`.
    pub fn new(env: &Envelope, n: usize, precision: i32) -> Result<Self> {
        Ok(ExpandedBackend { inner: RavioloBackend::new(env, n)?, precision, cache: Default::default() })
    }

    pub fn precision(&self) -> i32 {
        self.precision
    }
}

impl Backend for ExpandedBackend {
    type C = LaurentSeries<ConfigForm>;

    fn env(&self) -> &Envelope {
        &self.inner.env
    }

    fn n(&self) -> usize {
        self.inner.n
    }

    fn expansion(&self, s: usize, x: &MinusGen, t: usize, depth: u32) -> Result<Arc<Vec<ExpTerm<Self::C>>>> {
        let key_gen = MinusGen { lie: 0, ..*x };
        cached(&self.cache, (s, key_gen, t, depth), || {
            self.inner
                .expansion(s, &key_gen, t, depth)?
                .iter()
                .map(|e| Ok(ExpTerm { j: e.j, deg: e.deg, e: e.e, coeff: super::expand_coefficient(&e.coeff, self.precision)? }))
                .collect()
        })
    }

    fn times(&self, c: &Self::C, w: &Self::C) -> Self::C {
        c.mul(w)
    }
}
