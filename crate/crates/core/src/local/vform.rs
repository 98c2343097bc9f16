use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{render_sum, CoeffRing, Coefficient, Rational, RenderCoeff};

/// A polynomial form `f(t) + F(t) dt` on the interval, in one coordinate `t`.
/// The coordinate name is supplied only at rendering time.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct VForm {
    /// Coefficients of `t^j` in the 0-form part.
    pub f: Vec<Rational>,
    /// Coefficients of `t^j dt`.
    pub df: Vec<Rational>,
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn padd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn pmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn peval(a: &[Rational], t: &Rational) -> Rational {
    a.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// `p(1 - t)`.
fn preflect(a: &[Rational]) -> Vec<Rational> {
    let one_minus = [Rational::one(), -Rational::one()];
    let mut out = Vec::new();
    let mut power = vec![Rational::one()];
    for c in a {
        out = padd(&out, &power.iter().map(|x| x * c).collect::<Vec<_>>());
        power = pmul(&power, &one_minus);
    }
    out
}

/// `int_0^t p`.
fn pint(a: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    out.extend(a.iter().enumerate().map(|(j, c)| c / Rational::from_integer((j as i64 + 1).into())));
    trim(&mut out);
    out
}

impl VForm {
    pub fn new(mut f: Vec<Rational>, mut df: Vec<Rational>) -> Self {
        trim(&mut f);
        trim(&mut df);
        VForm { f, df }
    }

    pub fn zero() -> Self {
        VForm::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c], Vec::new())
    }

    /// `t^j`.
    pub fn power(j: usize) -> Self {
        let mut f = vec![Rational::zero(); j + 1];
        f[j] = Rational::one();
        Self::new(f, Vec::new())
    }

    /// `t^j dt`.
    pub fn power_dt(j: usize) -> Self {
        let mut df = vec![Rational::zero(); j + 1];
        df[j] = Rational::one();
        Self::new(Vec::new(), df)
    }

    /// `t^{m+1}(1 - t)`, the degree-0 minus basis form.
    pub fn e0(m: usize) -> Self {
        Self::power(m + 1).sub(&Self::power(m + 2))
    }

    /// `t^m dt`, the degree-1 minus basis form.
    pub fn e1(m: usize) -> Self {
        Self::power_dt(m)
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_empty() && self.df.is_empty()
    }

    /// The value when the form is a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.f.len(), self.df.is_empty()) {
            (0, true) => Some(Rational::zero()),
            (1, true) => Some(self.f[0].clone()),
            _ => None,
        }
    }

    pub fn degree0(&self) -> VForm {
        VForm::new(self.f.clone(), Vec::new())
    }

    pub fn degree1(&self) -> VForm {
        VForm::new(Vec::new(), self.df.clone())
    }

    /// Form degree when homogeneous (zero counts as degree 0).
    pub fn degree(&self) -> Option<u32> {
        match (self.f.is_empty(), self.df.is_empty()) {
            (_, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        VForm { f: padd(&self.f, &o.f), df: padd(&self.df, &o.df) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.f.iter().map(|c| c * q).collect(), self.df.iter().map(|c| c * q).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        VForm { f: pmul(&self.f, &o.f), df: padd(&pmul(&self.f, &o.df), &pmul(&self.df, &o.f)) }
    }

    pub fn d(&self) -> Self {
        let df: Vec<Rational> =
            self.f.iter().enumerate().skip(1).map(|(j, c)| c * Rational::from_integer((j as i64).into())).collect();
        Self::new(Vec::new(), df)
    }

    /// Pullback to the endpoint `t = t0` (1-forms die).
    pub fn at(&self, t0: &Rational) -> Rational {
        peval(&self.f, t0)
    }

    /// Pullback along `t |-> 1 - t`: `p(1 - t, -dt)`.
    pub fn reflect(&self) -> Self {
        VForm { f: preflect(&self.f), df: preflect(&self.df).iter().map(|c| -c).collect() }
    }

    /// `int_0^t F`, the homotopy `h`.
    pub fn h(&self) -> Self {
        Self::new(pint(&self.df), Vec::new())
    }

    /// `int_0^1 F`.
    pub fn integral(&self) -> Rational {
        peval(&pint(&self.df), &Rational::one())
    }

    /// `int_0^t F - t int_0^1 F`, the homotopy `k`.
    pub fn k(&self) -> Self {
        self.h().sub(&Self::power(1).scale(&self.integral()))
    }

    /// Highest power of `t` present.
    pub fn max_power(&self) -> usize {
        self.f.len().max(self.df.len()).saturating_sub(1)
    }

    /// Coordinates in the minus basis: `(e0 coefficients, e1 coefficients)`.
    /// `None` unless the 0-form part vanishes at both endpoints.
    pub fn minus_coords(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        if !Zero::is_zero(&self.at(&Rational::zero())) || !Zero::is_zero(&self.at(&Rational::one())) {
            return None;
        }
        // f = t(1 - t) g: divide by t, then by (1 - t).
        let g1: Vec<Rational> = self.f.iter().skip(1).cloned().collect();
        // Synthetic division of g1 by (1 - t) = -(t - 1).
        let n = g1.len();
        let mut g = vec![Rational::zero(); n.saturating_sub(1)];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry += &g1[i];
            g[i - 1] = -carry.clone();
        }
        let mut g = g;
        trim(&mut g);
        Some((g, self.df.clone()))
    }

    /// Render with coordinate name `t`.
    pub fn render(&self, t: &str) -> String {
        let mut terms = Vec::new();
        let mono = |j: usize| match j {
            0 => String::new(),
            1 => t.to_string(),
            _ => format!("{t}^{j}"),
        };
        for (j, c) in self.f.iter().enumerate() {
            if !Zero::is_zero(c) {
                terms.push(c.render_term(&mono(j)));
            }
        }
        for (j, c) in self.df.iter().enumerate() {
            if !Zero::is_zero(c) {
                let m = mono(j);
                let m = if m.is_empty() { format!("d{t}") } else { format!("{m}*d{t}") };
                terms.push(c.render_term(&m));
            }
        }
        render_sum(terms)
    }
}

impl fmt::Display for VForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("v"))
    }
}

impl Coefficient for VForm {
    fn is_zero(&self) -> bool {
        VForm::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        VForm::zero()
    }
    fn add(&self, o: &Self) -> Self {
        VForm::add(self, o)
    }
    fn neg(&self) -> Self {
        VForm::neg(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        VForm::scale(self, q)
    }
}

impl CoeffRing for VForm {
    fn mul(&self, o: &Self) -> Self {
        VForm::mul(self, o)
    }
    fn one_like(&self) -> Self {
        VForm::one()
    }
}
