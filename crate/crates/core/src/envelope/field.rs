use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::gens::{Envelope, MinusGen};
use super::modes::ModeTerm;
use super::vacuum::{mono_parity, pole_depth, Monomial, VacVec};
use crate::exact::{laurent_expand, render_sum, sign, RatFrac, Rational, RenderCoeff, Vars, EXACT};
use crate::local::VForm;
use crate::{Error, Result};

/// An element of `Omega([0,1]_u) (x) V((x))`, known below `x^precision`.
/// Each `(x-power, monomial)` carries a polynomial form in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldElement {
    terms: BTreeMap<(i32, Monomial), VForm>,
    precision: i32,
}

impl FieldElement {
    pub fn zero(precision: i32) -> Self {
        FieldElement { terms: BTreeMap::new(), precision }
    }

    /// `1 (x) v` at `x^0`.
    pub fn from_vec(v: &VacVec, precision: i32) -> Self {
        let mut f = Self::zero(precision);
        for (m, c) in v.terms() {
            f.insert(0, m.clone(), VForm::constant(c.clone()));
        }
        f
    }

    pub fn precision(&self) -> i32 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Monomial, &VForm)> {
        self.terms.iter().map(|((x, m), f)| (*x, m, f))
    }

    /// Lowest x-power present, or the precision when empty.
    pub fn min_degree(&self) -> i32 {
        self.terms.keys().map(|(x, _)| *x).min().unwrap_or(self.precision)
    }

    pub fn insert(&mut self, x: i32, m: Monomial, f: VForm) {
        if x >= self.precision || f.is_zero() {
            return;
        }
        let key = (x, m);
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(o.precision);
        for ((x, m), f) in &o.terms {
            out.insert(*x, m.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.precision);
        if !c.is_zero() {
            for ((x, m), f) in &self.terms {
                out.insert(*x, m.clone(), f.scale(c));
            }
        }
        out
    }

    /// Drop everything at or above `x^k`.
    pub fn truncate(&self, k: i32) -> Self {
        let precision = self.precision.min(k);
        FieldElement { terms: self.terms.iter().filter(|((x, _), _)| *x < precision).map(|(k, v)| (k.clone(), v.clone())).collect(), precision }
    }

    /// The `x^k` coefficient as `(monomial, u-form)` pairs.
    pub fn coefficient(&self, k: i32) -> Vec<(&Monomial, &VForm)> {
        self.terms.range((k, Vec::new())..).take_while(|((x, _), _)| *x == k).map(|((_, m), f)| (m, f)).collect()
    }

    /// The u-form pairs at negative x-powers that fail to vanish at `u = 0` or `u = 1`.
    pub fn boundary_violations(&self) -> Vec<(i32, Monomial)> {
        let zero = Rational::zero();
        let one = Rational::one();
        self.terms
            .iter()
            .filter(|((x, _), f)| *x < 0 && (!f.at(&zero).is_zero() || !f.at(&one).is_zero()))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Sign of reordering generators `0..n` into `mu` followed by `nu` reversed,
/// counting only transpositions of two odd generators.
pub fn unshuffle_sign(odd: &[bool], mu: &[usize], nu: &[usize]) -> Rational {
    let seq: Vec<usize> = mu.iter().chain(nu.iter().rev()).copied().collect();
    let mut chi = false;
    for (a, &p) in seq.iter().enumerate() {
        for &q in &seq[a + 1..] {
            if p > q && odd[p] && odd[q] {
                chi = !chi;
            }
        }
    }
    sign(chi)
}

/// The same sign computed by bubble-sorting the reordered sequence back to `0..n`.
pub fn unshuffle_sign_by_sorting(odd: &[bool], mu: &[usize], nu: &[usize]) -> Rational {
    let mut seq: Vec<usize> = mu.iter().chain(nu.iter().rev()).copied().collect();
    let mut s = Rational::one();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 1..seq.len() {
            if seq[i - 1] > seq[i] {
                if odd[seq[i - 1]] && odd[seq[i]] {
                    s = -s;
                }
                seq.swap(i - 1, i);
                swapped = true;
            }
        }
    }
    s
}

/// All order-preserving splits of `0..n` into `(mu, nu)`.
pub fn unshuffles(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0u32..1 << n)
        .map(|mask| (0..n).partition(|i| mask & (1 << i) != 0))
        .collect()
}

impl Envelope {
    /// Apply `coeff * x^shift * outer * g` to the term `w (x) m` at `x^x`. The generator
    /// passes the u-form with the Koszul sign.
    fn act_term(&self, t: &ModeTerm, x: i32, m: &[MinusGen], w: &VForm, out: &mut FieldElement) {
        let v = self.act_gen(&t.gen, m);
        if v.is_zero() {
            return;
        }
        let w = if t.gen.odd() { w.degree0().sub(&w.degree1()) } else { w.clone() };
        let w = t.outer.mul(&w).scale(&t.coeff);
        if w.is_zero() {
            return;
        }
        for (m2, c) in v.into_terms() {
            out.insert(x + t.xpow, m2, w.scale(&c));
        }
    }

    /// `X_+(x) f`, known below `x^precision`.
    pub fn apply_plus_mode(&self, x: &MinusGen, f: &FieldElement, precision: i32) -> FieldElement {
        let p = precision.min(f.precision);
        let mut out = FieldElement::zero(p);
        if f.is_zero() {
            return out;
        }
        let jmax = (p as i64 - f.min_degree() as i64).max(0) as usize;
        let modes = self.plus_modes(x, jmax);
        for ((xp, m), w) in &f.terms {
            let n = (p as i64 - *xp as i64).max(0) as usize;
            for t in &modes[..n.min(modes.len())] {
                self.act_term(t, *xp, m, w, &mut out);
            }
        }
        out
    }

    /// `X_-(x) f`. Exact inputs give exact outputs.
    pub fn apply_minus_mode(&self, x: &MinusGen, f: &FieldElement) -> FieldElement {
        let p = if f.is_exact() { EXACT } else { f.precision - x.k as i32 };
        let mut out = FieldElement::zero(p);
        let jmax = f.terms.keys().map(|(_, m)| pole_depth(m)).max().unwrap_or(0) as usize;
        let modes = self.minus_modes(x, jmax);
        for ((xp, m), w) in &f.terms {
            for t in &modes[..pole_depth(m) as usize] {
                self.act_term(t, *xp, m, w, &mut out);
            }
        }
        out
    }

    fn y_mono(&self, mono: &[MinusGen], t: &FieldElement, precision: i32) -> FieldElement {
        let Some((x, rest)) = mono.split_first() else {
            return t.truncate(precision);
        };
        let first = self.apply_plus_mode(x, &self.y_mono(rest, t, precision), precision);
        let second = self.y_mono(rest, &self.apply_minus_mode(x, t), precision);
        first.add(&second.scale(&sign(x.odd() && mono_parity(rest))))
    }

    /// `Y(A; x) B` below `x^precision` by the normal-ordering recursion on the PBW word of `A`.
    pub fn y_recursive(&self, a: &VacVec, b: &VacVec, precision: i32) -> FieldElement {
        let t = FieldElement::from_vec(b, EXACT);
        let mut out = FieldElement::zero(precision);
        for (m, c) in a.terms() {
            out = out.add(&self.y_mono(m, &t, precision).scale(c));
        }
        out
    }

    /// `Y(A; x) B` by the closed sum over unshuffles: `mu_+` modes outside, `nu_-` modes inside.
    pub fn y_explicit(&self, a: &VacVec, b: &VacVec, precision: i32) -> FieldElement {
        let t = FieldElement::from_vec(b, EXACT);
        let mut out = FieldElement::zero(precision);
        for (m, c) in a.terms() {
            let odd: Vec<bool> = m.iter().map(|g| g.odd()).collect();
            for (mu, nu) in unshuffles(m.len()) {
                let mut f = t.clone();
                for &i in &nu {
                    f = self.apply_minus_mode(&m[i], &f);
                }
                f = f.truncate(precision);
                for &i in mu.iter().rev() {
                    f = self.apply_plus_mode(&m[i], &f, precision);
                }
                out = out.add(&f.scale(&(unshuffle_sign(&odd, &mu, &nu) * c)));
            }
        }
        out
    }

    /// Boundary-condition check on a computed `Y(A; x) B`.
    pub fn check_boundary(&self, f: &FieldElement) -> Result<()> {
        match f.boundary_violations().first() {
            None => Ok(()),
            Some((x, m)) => Err(Error::Boundary(format!(
                "coefficient of x^{x} on {} does not vanish at u = 0 and u = 1",
                self.render_monomial(m)
            ))),
        }
    }

    /// `d(w (x) V) = dw (x) V + (-1)^{|w|} w (x) dV`.
    pub fn field_differential(&self, f: &FieldElement) -> FieldElement {
        let mut out = FieldElement::zero(f.precision);
        for ((x, m), w) in &f.terms {
            out.insert(*x, m.clone(), w.d());
            let dv = self.differential(&VacVec::monomial(m.clone(), Rational::one()));
            let w_signed = w.degree0().sub(&w.degree1());
            for (m2, c) in dv.into_terms() {
                out.insert(*x, m2, w_signed.scale(&c));
            }
        }
        out
    }

    /// `d(Y(A)B) - Y(dA)B - (-1)^{|A|} Y(A) dB`; zero when `Y` is a chain map.
    pub fn chain_map_defect(&self, a: &VacVec, b: &VacVec, precision: i32) -> Result<FieldElement> {
        let pa = a.parity().ok_or_else(|| Error::State("A must be homogeneous".into()))?;
        let lhs = self.field_differential(&self.y_recursive(a, b, precision));
        let r1 = self.y_recursive(&self.differential(a), b, precision);
        let r2 = self.y_recursive(a, &self.differential(b), precision).scale(&sign(pa));
        Ok(lhs.sub(&r1).sub(&r2))
    }

    /// Render as `x^p*(u-form)*word |0>` terms followed by the truncation order.
    pub fn render_field(&self, f: &FieldElement) -> String {
        let body = render_sum(f.terms().map(|(x, m, w)| {
            let xs = match x {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{x}"),
            };
            let mono = self.render_monomial(m);
            match w.as_constant() {
                Some(c) => {
                    let s = if xs.is_empty() { mono } else { format!("{xs}*{mono}") };
                    c.render_term(&s)
                }
                None => {
                    let s = if xs.is_empty() { String::new() } else { format!("{xs}*") };
                    (false, format!("{s}({})*{mono}", w.render("u")))
                }
            }
        }));
        if f.is_exact() {
            body
        } else {
            format!("{body} + O(x^{})", f.precision)
        }
    }
}

/// Coefficients of the classical order-`k` field from partial fractions:
/// `g = (y - w)^{-k}` expanded for small `w` gives the creation part, and minus its
/// expansion for small `y` gives the annihilation part. Returns
/// `(c_plus[j], c_minus[j])` for `j < jmax`: the factors of `x^j a_{-j-k}` and `x^{-j-k} a_j`.
pub fn classical_mode_oracle(k: u16, jmax: usize) -> (Vec<Rational>, Vec<Rational>) {
    let vars = Vars::plain(3);
    let k = k as i32;
    let pick = |f: RatFrac, pow: &dyn Fn(i32) -> i32| -> Vec<Rational> {
        let s = laurent_expand(&f, 0, jmax as i32, "x");
        (0..jmax as i32)
            .map(|j| {
                let c = s.coeff(j).expect("within precision");
                let monic = RatFrac::diff_pow(Vars::plain(2), 1, 0, pow(j));
                c.mul(&monic).as_constant().expect("pure power of the separation")
            })
            .collect()
    };
    // Variables (origin, y, w): expand in w.
    let plus = pick(RatFrac::diff_pow(vars, 1, 2, -k), &|j| j + k);
    // Variables (origin, w, y): expand in y, then negate.
    let minus = pick(RatFrac::diff_pow(vars, 2, 1, -k), &|j| j + k).into_iter().map(|c| -c).collect();
    (plus, minus)
}
