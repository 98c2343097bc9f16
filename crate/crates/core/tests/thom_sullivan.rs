use std::collections::BTreeMap;

mod common;

use common::gens::{arb_element, interpolate, t1, vector};
use proptest::prelude::*;
use raviolo::exact::{q, Rational};
use raviolo::forms::{LabelSet, QForm};
use raviolo::local::cohomology_truncated;
use raviolo::thom_sullivan::*;
use raviolo::Error;

#[test]
fn simplex_integral_against_iterated_integration() {
    // int_0^1 int_0^{1-x} x^a y^b dy dx = a! b! / (a + b + 2)!
    for a in 0..4u16 {
        for b in 0..4u16 {
            let mut direct = Rational::from_integer(0.into());
            // expand (1-x)^{b+1}/(b+1) and integrate x^a times it term by term
            for i in 0..=(b + 1) as i64 {
                let binom = raviolo::exact::binomial(b as u64 + 1, i as u64);
                let s = if i % 2 == 0 { q(1) } else { q(-1) };
                direct += s * binom / q(b as i64 + 1) / q(a as i64 + i + 1);
            }
            assert_eq!(simplex_integral(&[a, b], 2), direct, "a = {a}, b = {b}");
        }
    }
    assert_eq!(simplex_integral(&[], 0), q(1));
    assert_eq!(simplex_integral(&[0], 1), q(1));
}

#[test]
fn integral_of_dt1_is_one() {
    let f = t1().d();
    assert_eq!(integrate_top(&f, 1), q(1));
    let sp = simplex_forms(2);
    let top = QForm::coordinate(&sp, 0, 1).d().mul(&QForm::coordinate(&sp, 0, 2).d());
    assert_eq!(integrate_top(&top, 2), q(1, ) / q(2));
}

#[test]
fn rav_cover_is_a_valid_diagram() {
    for k in 1..=4 {
        let dg = SemiCosimplicial::rav_cover(k).unwrap();
        assert_eq!(dg.level(0).dim(), 2 * (k + 1));
        assert_eq!(dg.level(1).dim(), 2 * k + 1);
    }
    assert!(SemiCosimplicial::rav_cover(0).is_err());
}

#[test]
fn cosimplicial_identities_are_checked() {
    let dg = SemiCosimplicial::point(3).unwrap();
    assert_eq!(dg.depth(), 3);
    let one = TruncAlg::laurent_window("z", 0, 0);
    let two = TruncAlg::product(&[one.clone(), one.clone()]);
    let id = LinearMap { target_dim: 1, images: vec![vector(&[(0, 1)])] };
    let swap_or_not = |images: Vec<Vector>| LinearMap { target_dim: 2, images };
    // Level 2 = Q x Q; every coface from level 1 lands diagonally except one.
    let diag = swap_or_not(vec![vector(&[(0, 1), (1, 1)])]);
    let first = swap_or_not(vec![vector(&[(0, 1)])]);
    let bad = SemiCosimplicial::new(
        vec![one.clone(), one.clone(), two],
        vec![vec![id.clone(), id], vec![diag.clone(), diag, first]],
    );
    assert!(matches!(bad, Err(Error::Cosimplicial(_))));
}

#[test]
fn constant_family_is_valid() {
    let dg = SemiCosimplicial::rav_cover(2).unwrap();
    // (z, z): the same series on both patches
    let a = vector(&[(1, 1), (4, 1)]);
    let x = ThElement::constant(&dg, &a);
    assert!(x.validate(&dg).valid);
    assert!(x.d().is_zero());
    assert_eq!(x.integrate()[0], a);
}

#[test]
fn violation_is_reported() {
    let dg = SemiCosimplicial::rav_cover(2).unwrap();
    let a = vector(&[(1, 1), (4, 1)]);
    let mut comps: Vec<BTreeMap<usize, QForm>> = (0..2).map(|n| ThElement::constant(&dg, &a).component(n).clone()).collect();
    let sp1 = simplex_forms(1);
    comps[1].insert(0, QForm::coordinate(&sp1, 0, 0));
    let x = ThElement::from_components(comps);
    let v = x.validate(&dg);
    assert!(!v.valid);
    assert_eq!(v.failures, vec![(0, 1)]);
}

#[test]
fn products_of_constants() {
    let dg = SemiCosimplicial::rav_cover(3).unwrap();
    let a = vector(&[(1, 1), (5, 1)]);
    let b = vector(&[(0, 2), (2, 1), (4, 2), (6, 1)]);
    let ab = dg.level(0).mul(&a, &b);
    let x = ThElement::constant(&dg, &a).mul(&ThElement::constant(&dg, &b), &dg);
    assert_eq!(x, ThElement::constant(&dg, &ab));
}

#[test]
fn rank_tables_match_for_small_windows() {
    for k in 1..=6 {
        let t = rav_cover_ranks(k, 2).unwrap();
        assert!(t.consistent(), "{t:?}");
        assert_eq!(t.th, vec![k + 1, k]);
    }
    let t = rav_cover_ranks(3, 3).unwrap();
    assert_eq!((t.th[0], t.th[1]), (4, 3));
    assert_eq!(t.local, vec![cohomology_truncated(3, 3).unwrap().h0_rank, cohomology_truncated(3, 3).unwrap().h1_rank]);
}

#[test]
fn cech_h0_is_the_diagonal() {
    let dg = SemiCosimplicial::rav_cover(2).unwrap();
    let diag = vector(&[(0, 1), (3, 1)]);
    assert!(dg.cech_d(0, &diag).is_empty());
    assert!(!dg.cech_d(0, &vector(&[(0, 1)])).is_empty());
}

/// The constant diagram truncated at depth `L`: odd truncations keep a top class.
#[test]
fn point_diagram_matches_cech() {
    for (depth, expected) in [(1, vec![1, 1]), (2, vec![1, 0, 0]), (3, vec![1, 0, 0, 1])] {
        let dg = SemiCosimplicial::point(depth).unwrap();
        assert_eq!(dg.cech_ranks(), expected, "depth {depth}");
        assert_eq!(th_ranks(&dg, 3), expected, "depth {depth}");
    }
}

#[test]
fn basis_elements_are_valid() {
    let dg = SemiCosimplicial::point(2).unwrap();
    for k in 0..=2 {
        for x in th_basis(&dg, k, 3) {
            assert!(x.validate(&dg).valid);
        }
    }
    let _ = LabelSet::ordinal(1);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn integration_is_a_chain_map((a, r, s) in arb_element(3)) {
        let dg = SemiCosimplicial::rav_cover(3).unwrap();
        let x = interpolate(&dg, &a, &r, &s);
        prop_assert!(x.validate(&dg).valid);
        let lhs = x.d().integrate();
        let ix = x.integrate();
        prop_assert_eq!(&lhs[1], &dg.cech_d(0, &ix[0]));
    }

    #[test]
    fn d_squared_and_leibniz((a, r, s) in arb_element(2), (b, r2, s2) in arb_element(2)) {
        let dg = SemiCosimplicial::rav_cover(2).unwrap();
        let x = interpolate(&dg, &a, &r, &s);
        let y = interpolate(&dg, &b, &r2, &s2);
        prop_assert!(x.d().d().is_zero());
        let xy = x.mul(&y, &dg);
        prop_assert!(xy.validate(&dg).valid);
        // d(xy) = dx y + (-1)^{|x|} x dy, split by degree
        let x0 = x.degree_part(0);
        let x1 = x.degree_part(1);
        let rhs = x.d().mul(&y, &dg).add(&x0.mul(&y.d(), &dg)).add(&x1.mul(&y.d(), &dg).scale(&q(-1)));
        prop_assert_eq!(xy.d(), rhs);
    }
}

#[test]
fn deeper_chain_map_on_point_diagram() {
    let dg = SemiCosimplicial::point(2).unwrap();
    for k in 0..2 {
        for x in th_basis(&dg, k, 3) {
            let lhs = x.d().integrate();
            let ix = x.integrate();
            for n in 0..2 {
                assert_eq!(lhs[n + 1], dg.cech_d(n, &ix[n]), "k = {k}, n = {n}");
            }
        }
    }
}
