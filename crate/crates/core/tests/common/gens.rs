//! Random-element strategies shared by the property tests and the acceptance runner.

use std::collections::BTreeMap;

use proptest::prelude::*;
use raviolo::coinvariants::vform_on_line;
use raviolo::config::{local_space, local_var, u, ConfigForm, RavLocal};
use raviolo::exact::{q, LaurentSeries, RatFrac, Rational, Vars, EXACT};
use raviolo::forms::QForm;
use raviolo::local::{LocalElem, VForm};
use raviolo::thom_sullivan::{simplex_forms, SemiCosimplicial, ThElement, Vector};

pub fn coeffs(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-4i64..5).prop_map(q), 0..n)
}

pub fn vform() -> impl Strategy<Value = VForm> {
    (coeffs(4), coeffs(4)).prop_map(|(f, df)| VForm::new(f, df))
}

/// `sum c_m v^m (v - v^2) + sum d_m v^m dv`: vanishes at both endpoints.
pub fn minus_vform() -> impl Strategy<Value = VForm> {
    (coeffs(3), coeffs(3)).prop_map(|(a, b)| {
        let e0 = a.iter().enumerate().fold(VForm::zero(), |acc, (m, c)| acc.add(&VForm::e0(m).scale(c)));
        b.iter().enumerate().fold(e0, |acc, (m, c)| acc.add(&VForm::e1(m).scale(c)))
    })
}

pub fn series(range: std::ops::Range<i32>, coeff: impl Strategy<Value = VForm>) -> impl Strategy<Value = LocalElem> {
    let len = range.len();
    prop::collection::vec(coeff, len).prop_map(move |cs| {
        let mut x = LaurentSeries::zero("z", EXACT, VForm::zero());
        for (k, c) in range.clone().zip(cs) {
            x.insert(k, c);
        }
        x
    })
}

pub fn plus() -> impl Strategy<Value = LocalElem> {
    series(0..4, vform())
}

pub fn minus() -> impl Strategy<Value = LocalElem> {
    series(-3..0, minus_vform())
}

pub fn element() -> impl Strategy<Value = LocalElem> {
    (minus(), plus()).prop_map(|(m, p)| m.add(&p))
}

/// `u_(12) u_(21) / (z_1 - z_2)`, the basic member of `A_2`.
pub fn a2_member() -> ConfigForm {
    let p2 = Vars::plain(2);
    u(2, &[1, 2], p2).unwrap().mul(&u(2, &[2, 1], p2).unwrap()).scale_by(&RatFrac::diff_pow(p2, 0, 1, -1))
}

/// A random element of `A_2{{w - z_s}}_-` over `{v} x S_2`.
pub fn local_minus() -> impl Strategy<Value = (RavLocal, usize)> {
    let term = (-3i32..0, 0usize..2, 0usize..3, 0usize..4, -3i64..4);
    (prop::collection::vec(term, 1..4), 1usize..3).prop_map(|(terms, s)| {
        let vars = Vars::plain(2);
        let sp = local_space(2).unwrap();
        let one = RatFrac::one(vars);
        let zero = ConfigForm::zero(&sp, RatFrac::zero(vars));
        let mut x = LaurentSeries::zero(&local_var(s), 4, zero);
        for (p, deg, m, shape, c) in terms {
            let phi = if deg == 0 { VForm::e0(m) } else { VForm::e1(m) };
            let mut t = vform_on_line(&phi, &sp, 0, &one).scale(&q(c));
            let simplex = |f: ConfigForm| f.embed(&sp, &[1]).unwrap();
            t = match shape {
                0 => t,
                1 => t.mul(&simplex(u(2, &[1, 2], vars).unwrap())),
                2 => t.mul(&simplex(a2_member())),
                _ => t.scale_by(&RatFrac::var(vars, 0).sub(&RatFrac::var(vars, 1))),
            };
            x = x.add(&LaurentSeries::monomial(&local_var(s), p, t).with_precision(4));
        }
        (x, s)
    })
}

pub fn vector(pairs: &[(usize, i64)]) -> Vector {
    pairs.iter().map(|&(i, c)| (i, q(c))).collect()
}

/// `t_1` on `Omega([1])`.
pub fn t1() -> QForm {
    let sp = simplex_forms(1);
    QForm::q(&sp, q(1)).sub(&QForm::coordinate(&sp, 0, 0))
}

/// Interpolating family on the raviolo cover: `omega_0 = a`,
/// `omega_1 = d_1(a) t_0 + d_0(a) t_1 + t_0 t_1 r + s dt_0`.
pub fn interpolate(dg: &SemiCosimplicial, a: &Vector, r: &Vector, s: &Vector) -> ThElement {
    let sp0 = simplex_forms(0);
    let sp1 = simplex_forms(1);
    let t0 = QForm::coordinate(&sp1, 0, 0);
    let t1 = t1();
    let dt0 = t0.d();
    let mut c1: BTreeMap<usize, QForm> = BTreeMap::new();
    let mut put = |i: usize, f: QForm| {
        let e = c1.entry(i).or_insert_with(|| QForm::zero(&sp1, q(0)));
        *e = e.add(&f);
    };
    for (i, c) in dg.coface(0, 1).apply(a) {
        put(i, t0.scale(&c));
    }
    for (i, c) in dg.coface(0, 0).apply(a) {
        put(i, t1.scale(&c));
    }
    for (&i, c) in r {
        put(i, t0.mul(&t1).scale(c));
    }
    for (&i, c) in s {
        put(i, dt0.scale(c));
    }
    let c0 = a.iter().map(|(&i, c)| (i, QForm::q(&sp0, c.clone()))).collect();
    ThElement::from_components(vec![c0, c1])
}

pub fn arb_vec(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3i64..4, dim).prop_map(|v| v.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(i, c)| (i, q(c))).collect())
}

pub fn arb_element(k: usize) -> impl Strategy<Value = (Vector, Vector, Vector)> {
    (arb_vec(2 * (k + 1)), arb_vec(2 * k + 1), arb_vec(2 * k + 1))
}

