use std::collections::BTreeMap;

use super::site::{SiteSpec, SiteVal, SiteVector};
use crate::envelope::Envelope;
use crate::exact::{render_sum, Coefficient, Rational};
use crate::{Error, Result};

/// A sum of `coefficient (x) v_1 (x) ... (x) v_N` with each `v_i` a basis vector
/// at site `i`. Coefficients sit to the left of every site vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorState<C> {
    sites: Vec<SiteSpec>,
    terms: BTreeMap<Vec<SiteVal>, C>,
    zero: C,
}

impl<C: Coefficient> TensorState<C> {
    pub fn zero(sites: &[SiteSpec], zero: C) -> Result<Self> {
        for (i, s) in sites.iter().enumerate() {
            if s.index != i + 1 {
                return Err(Error::State(format!("site {} listed in position {}", s.index, i + 1)));
            }
        }
        Ok(TensorState { sites: sites.to_vec(), terms: BTreeMap::new(), zero })
    }

    /// `coeff (x) v_1 (x) ... (x) v_N`, expanded multilinearly.
    pub fn product(sites: &[SiteSpec], coeff: C, vectors: &[SiteVector]) -> Result<Self> {
        let mut out = Self::zero(sites, coeff.zero_like())?;
        if vectors.len() != sites.len() {
            return Err(Error::State(format!("{} vectors for {} sites", vectors.len(), sites.len())));
        }
        let mut partial: Vec<(Vec<SiteVal>, Rational)> = vec![(Vec::new(), Rational::from_integer(1.into()))];
        for (v, s) in vectors.iter().zip(sites) {
            v.check(s)?;
            let terms = v.terms();
            partial = partial
                .into_iter()
                .flat_map(|(k, c)| {
                    terms.iter().map(move |(val, d)| {
                        let mut k2 = k.clone();
                        k2.push(val.clone());
                        (k2, &c * d)
                    })
                })
                .collect();
        }
        for (k, c) in partial {
            out.insert(k, coeff.scale(&c));
        }
        Ok(out)
    }

    pub fn sites(&self) -> &[SiteSpec] {
        &self.sites
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SiteVal>, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Vec<SiteVal>, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &[SiteVal]) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn insert(&mut self, key: Vec<SiteVal>, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = TensorState { sites: self.sites.clone(), terms: BTreeMap::new(), zero: self.zero.clone() };
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.scale(q));
        }
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs<D: Coefficient>(&self, zero: D, f: impl Fn(&C) -> Result<D>) -> Result<TensorState<D>> {
        let mut out = TensorState { sites: self.sites.clone(), terms: BTreeMap::new(), zero };
        for (k, c) in &self.terms {
            out.insert(k.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Total number of lowering generators, maximized over terms.
    pub fn lowering_count(&self) -> usize {
        self.terms.keys().map(|k| k.iter().map(SiteVal::lowering_count).sum()).max().unwrap_or(0)
    }

    /// Render as `coeff*[v_1 (x) ... (x) v_N]` terms.
    pub fn render(&self, env: &Envelope, coeff: impl Fn(&C) -> String) -> String {
        render_sum(self.terms.iter().map(|(k, c)| (false, format!("({})*[{}]", coeff(c), render_key(env, &self.sites, k)))))
    }
}

pub(crate) fn render_key(env: &Envelope, sites: &[SiteSpec], key: &[SiteVal]) -> String {
    key.iter().zip(sites).map(|(v, s)| v.render(env, s)).collect::<Vec<_>>().join(" (x) ")
}
