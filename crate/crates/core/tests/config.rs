use std::collections::BTreeMap;

mod common;

use common::gens::{a2_member, local_minus};
use proptest::prelude::*;
use raviolo::config::*;
use raviolo::exact::{laurent_expand, q, LaurentSeries, RatFrac, Vars};
use raviolo::forms::LabelSet;

/// Members of `A_3` over `vars`: coordinates, their differentials, variables and embedded `A_2` members.
fn pool(vars: Vars) -> Vec<ConfigForm> {
    let perms = LabelSet::perms(3).unwrap();
    let mut out: Vec<ConfigForm> = perms.labels().iter().map(|s| u(3, s, vars).unwrap()).collect();
    out.extend(perms.labels().iter().map(|s| u(3, s, vars).unwrap().d()));
    let one = u(3, &[1, 2, 3], vars).unwrap().sub(&u(3, &[1, 2, 3], vars).unwrap()).add(&ConfigForm::constant(out[0].space(), RatFrac::one(vars)));
    out.extend((0..3).map(|i| one.scale_by(&RatFrac::var(vars, i))));
    for pair in [[1, 2], [1, 3], [2, 3]] {
        out.push(iota_embed(&pair, 3, &a2_member(), vars).unwrap());
    }
    out
}

fn combination(vars: Vars) -> impl Strategy<Value = ConfigForm> {
    let n = pool(vars).len();
    prop::collection::vec((-2i64..3, prop::collection::vec(0..n, 1..3)), 1..3).prop_map(move |terms| {
        let p = pool(vars);
        let zero = p[0].sub(&p[0]);
        terms.iter().fold(zero, |acc, (c, idx)| {
            let t = idx[1..].iter().fold(p[idx[0]].clone(), |t, &i| t.mul(&p[i]));
            acc.add(&t.scale(&q(*c)))
        })
    })
}

/// Members of `A'_3` (last point `w`): `v_ij`, their differentials and the two special elements.
fn prime_pool() -> Vec<ConfigForm> {
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        out.push(v_ij(i, j).unwrap());
        out.push(v_ij(i, j).unwrap().d());
    }
    out.push(kernel_element().unwrap());
    out.push(omega12().unwrap());
    out.push(iota_n(&a2_member()).unwrap());
    out
}

fn prime_combination() -> impl Strategy<Value = ConfigForm> {
    let n = prime_pool().len();
    prop::collection::vec((-2i64..3, prop::collection::vec(0..n, 1..3)), 1..3).prop_map(|terms| {
        let p = prime_pool();
        let zero = p[0].sub(&p[0]);
        terms.iter().fold(zero, |acc, (c, idx)| {
            let t = idx[1..].iter().fold(p[idx[0]].clone(), |t, &i| t.mul(&p[i]));
            acc.add(&t.scale(&q(*c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn members_form_a_dg_subalgebra(f in combination(Vars::plain(3))) {
        let r = in_a_n(&f).unwrap();
        prop_assert!(r.member, "{}: {}", f, r.describe());
        prop_assert!(in_a_n(&f.d()).unwrap().member);
    }

    #[test]
    fn expansion_is_multiplicative(f in prime_combination(), g in prime_combination(), s in 1usize..3) {
        let k = 3;
        let (ef, eg) = (expand_at(&f, s, k).unwrap(), expand_at(&g, s, k).unwrap());
        let prod = ef.mul(&eg);
        let direct = expand_at(&f.mul(&g), s, prod.precision()).unwrap();
        prop_assert_eq!(direct, prod.truncate(prod.precision()));
        prop_assert_eq!(expand_at(&f.d(), s, k).unwrap(), ef.map(ef.zero_coeff().clone(), |c| Some(c.d())));
    }
}

/// Arithmetic over `B_4`, as in the exact-arithmetic tests.
fn b4() -> impl Strategy<Value = RatFrac> {
    let v = Vars::plain(4);
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let factor = prop_oneof![
        (0usize..4).prop_map(move |i| RatFrac::var(v, i)),
        (-3i64..4).prop_map(move |c| RatFrac::constant(v, q(c))),
        (prop::sample::select(pairs), 1i32..3).prop_map(move |((i, j), e)| RatFrac::diff_pow(v, i, j, -e)),
    ];
    prop::collection::vec(prop::collection::vec(factor, 1..4), 1..3)
        .prop_map(move |ts| ts.iter().fold(RatFrac::zero(v), |acc, fs| acc.add(&fs.iter().fold(RatFrac::one(v), |p, f| p.mul(f)))))
}

/// Double expansion: `w = z_4` around `z_1` (variable `y`) and `z_3` around `z_2` (variable `x`).
fn double(series: &LaurentSeries<RatFrac>, inner_base: usize, k: i32, swap: bool) -> BTreeMap<(i32, i32), RatFrac> {
    let mut out = BTreeMap::new();
    for (b, c) in series.terms() {
        for (a, cc) in laurent_expand(c, inner_base, k, "t").terms() {
            let key = if swap { (b, a) } else { (a, b) };
            if !cc.is_zero() {
                out.insert(key, cc.clone());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coefficient_expansions_commute(f in b4()) {
        let k = 3;
        // w around z_1 first, then z_3 around z_2
        let first = double(&laurent_expand(&f, 0, k, "y"), 1, k, false);
        // z_3 around z_2 first: exchange z_3 and w so the expanded variable is last
        let swapped = f.rename(Vars::plain(4), &[0, 1, 3, 2]);
        let second = double(&laurent_expand(&swapped, 1, k, "x"), 0, k, true);
        prop_assert_eq!(first, second);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn g_then_expansion_is_the_identity((x, s) in local_minus()) {
        prop_assert!(is_local_minus(&x).unwrap());
        let g = g_build(s, &x).unwrap();
        prop_assert!(in_a_n(&g).unwrap().member);
        prop_assert!(vanishes_at_infinity(&g));
        prop_assert_eq!(expand_at(&g, s, 4).unwrap(), x);
        let other = expand_at(&g, 3 - s, 4).unwrap();
        prop_assert!(other.min_degree() >= 0);
    }
}

#[test]
fn iota_image_matches_display() {
    let img = iota_n(&u(2, &[1, 2], Vars::plain(2)).unwrap()).unwrap();
    assert_eq!(img.to_string(), "u[123] + u[132] + u[312]");
}

#[test]
fn rejected_forms_name_their_face() {
    for src in ["u[123]/(w-z2)", "du[123]/(w-z2)"] {
        let f = raviolo::syntax::parse_form(src, 3).unwrap();
        let r = in_a_n(&f).unwrap();
        assert!(!r.member);
        assert_eq!((r.violations[0].i, r.violations[0].j), (3, 2));
        assert_eq!(r.violations[0].face, ["132", "312", "321"]);
    }
}
