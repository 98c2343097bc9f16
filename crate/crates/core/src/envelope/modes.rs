use std::collections::BTreeMap;

use num_traits::Zero;

use super::gens::{Envelope, Gen, MinusGen, PlusGen};
use crate::exact::{binomial, factorial, Coefficient, LaurentSeries, Rational, EXACT};
use crate::local::VForm;

/// One term `coeff * x^xpow * outer(u, du) * gen` of a mode expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeTerm {
    pub xpow: i32,
    pub coeff: Rational,
    /// External form in `u`; `1` for plus modes.
    pub outer: VForm,
    pub gen: Gen,
}

impl Envelope {
    /// `X_+(x) = sum_j C(j+k-1, k-1) x^j (a (x) z^{-j-k} p)` for `j < jmax`.
    pub fn plus_modes(&self, x: &MinusGen, jmax: usize) -> Vec<ModeTerm> {
        let k = x.k as u64;
        (0..jmax as u64)
            .map(|j| ModeTerm {
                xpow: j as i32,
                coeff: binomial(j + k - 1, k - 1),
                outer: VForm::one(),
                gen: Gen::Minus(MinusGen { k: (j + k) as u16, ..*x }),
            })
            .collect()
    }

    /// `X_-(x) = sum_j (-1)^{k-1} C(j+k-1, k-1) x^{-j-k} p(1-u, -du) (a (x) z^j)` for `j < jmax`.
    pub fn minus_modes(&self, x: &MinusGen, jmax: usize) -> Vec<ModeTerm> {
        let k = x.k as u64;
        let outer = self.minus_form(x).reflect();
        let sign = if k % 2 == 0 { -1 } else { 1 };
        (0..jmax as u64)
            .map(|j| ModeTerm {
                xpow: -((j + k) as i32),
                coeff: binomial(j + k - 1, k - 1) * Rational::from_integer(sign.into()),
                outer: outer.clone(),
                gen: Gen::Plus(PlusGen::new(x.lie as usize, j as u16, 0, 0)),
            })
            .collect()
    }

    /// Mode expansions of pole order `k` obtained from the order-1 expansion of the
    /// same `a (x) p` by applying `(k-1)!^{-1} d^{k-1}/dx^{k-1}`. Returns exact
    /// `(plus, minus)` series; the plus part holds `j < jmax - (k-1)`, the minus part `j < jmax`.
    pub fn modes_by_derivative(&self, x: &MinusGen, jmax: usize) -> (LaurentSeries<ModeCoeff>, LaurentSeries<ModeCoeff>) {
        let base = MinusGen { k: 1, ..*x };
        let mut plus = mode_series(self.plus_modes(&base, jmax));
        let mut minus = mode_series(self.minus_modes(&base, jmax));
        for _ in 1..x.k {
            plus = plus.derive();
            minus = minus.derive();
        }
        let f = factorial(x.k as u64 - 1).recip();
        (plus.scale(&f), minus.scale(&f))
    }

    /// The closed-form expansions over the same ranges as [`Self::modes_by_derivative`].
    pub fn modes_closed(&self, x: &MinusGen, jmax: usize) -> (LaurentSeries<ModeCoeff>, LaurentSeries<ModeCoeff>) {
        let plus_len = jmax.saturating_sub(x.k as usize - 1);
        (mode_series(self.plus_modes(x, plus_len)), mode_series(self.minus_modes(x, jmax)))
    }
}

fn mode_series(terms: Vec<ModeTerm>) -> LaurentSeries<ModeCoeff> {
    let mut s = LaurentSeries::zero("x", EXACT, ModeCoeff::default());
    for t in terms {
        s.insert(t.xpow, ModeCoeff::single(t.gen, t.outer, t.coeff));
    }
    s
}

/// A finite combination of `(generator, outer u-form)` pairs, used to compare mode series.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ModeCoeff(BTreeMap<(Gen, VForm), Rational>);

impl ModeCoeff {
    pub fn single(g: Gen, outer: VForm, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !Zero::is_zero(&c) {
            m.insert((g, outer), c);
        }
        ModeCoeff(m)
    }
}

impl Coefficient for ModeCoeff {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn zero_like(&self) -> Self {
        ModeCoeff::default()
    }
    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            let e = m.entry(k.clone()).or_insert_with(Rational::zero);
            *e += c;
        }
        m.retain(|_, c| !Zero::is_zero(c));
        ModeCoeff(m)
    }
    fn neg(&self) -> Self {
        self.scale(&Rational::from_integer((-1).into()))
    }
    fn scale(&self, q: &Rational) -> Self {
        let mut m: BTreeMap<_, _> = self.0.iter().map(|(k, c)| (k.clone(), c * q)).collect();
        m.retain(|_, c: &mut Rational| !Zero::is_zero(c));
        ModeCoeff(m)
    }
}
