use std::sync::Arc;

use proptest::prelude::*;
use raviolo::exact::{q, Rational};
use raviolo::forms::{face_substitution, restrict_face, vertex_map_substitution, FormSpace, LabelSet, QForm};

fn s3() -> Arc<FormSpace> {
    FormSpace::simplex(LabelSet::perms(3).unwrap())
}

/// A monomial `c * prod u_l * prod du_l` on `S_3`, as label lists.
type MonoSpec = (i64, Vec<usize>, Vec<usize>);

fn build(sp: &Arc<FormSpace>, terms: &[MonoSpec]) -> QForm {
    terms.iter().fold(QForm::zero(sp, q(0)), |acc, (c, us, dus)| {
        let mut t = QForm::q(sp, q(*c));
        for &l in us {
            t = t.mul(&QForm::coordinate(sp, 0, l));
        }
        for &l in dus {
            t = t.mul(&QForm::coordinate(sp, 0, l).d());
        }
        acc.add(&t)
    })
}

fn spec(max_deg: usize) -> impl Strategy<Value = Vec<MonoSpec>> {
    prop::collection::vec((-3i64..4, prop::collection::vec(0usize..6, 0..3), prop::collection::vec(0usize..6, 0..=max_deg)), 1..4)
}

fn form() -> impl Strategy<Value = QForm> {
    spec(3).prop_map(|s| build(&s3(), &s))
}

fn homogeneous(deg: usize) -> impl Strategy<Value = QForm> {
    prop::collection::vec((-3i64..4, prop::collection::vec(0usize..6, 0..3), prop::collection::vec(0usize..6, deg)), 1..4)
        .prop_map(|s| build(&s3(), &s))
}

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..4).prop_map(|(a, b)| q(a) / q(b))
}

fn vecs(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rat(), 5), n)
}

fn sign(odd: bool) -> Rational {
    if odd {
        q(-1)
    } else {
        q(1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn d_squared_is_zero(f in form()) {
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn graded_leibniz(a in form(), b in form()) {
        for k in 0..=3 {
            let a = a.part_of_degree(k);
            let lhs = a.mul(&b).d();
            let rhs = a.d().mul(&b).add(&a.mul(&b.d()).scale(&sign(k % 2 == 1)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn faces_compose(f in form(), s1 in prop::collection::btree_set(0usize..6, 1..3), s2 in prop::collection::btree_set(0usize..6, 1..3)) {
        let union: Vec<usize> = s1.union(&s2).copied().collect();
        prop_assume!(union.len() < 6);
        let sp = s3();
        let labels = sp.labels(0).unwrap().clone();
        let first: Vec<usize> = s1.iter().copied().collect();
        let once = restrict_face(&f, 0, &first).unwrap();
        let kept = once.space().labels(0).unwrap().clone();
        let second: Vec<usize> = s2.difference(&s1).map(|&l| kept.index_of(labels.label(l)).unwrap()).collect();
        let twice = if second.is_empty() { once } else { restrict_face(&once, 0, &second).unwrap() };
        prop_assert_eq!(twice, restrict_face(&f, 0, &union).unwrap());
    }

    #[test]
    fn pullbacks_commute_with_d(f in form(), zero in prop::collection::btree_set(0usize..6, 1..5), phi in prop::collection::vec(0usize..6, 1..4)) {
        let sp = s3();
        let zero: Vec<usize> = zero.into_iter().collect();
        let face = face_substitution(&sp, 0, &zero).unwrap();
        prop_assert_eq!(face.apply(&f.d()), face.apply(&f).d());
        let vertex = vertex_map_substitution(&sp, 0, &phi, &LabelSet::ordinal(phi.len() - 1)).unwrap();
        prop_assert_eq!(vertex.apply(&f.d()), vertex.apply(&f).d());
    }

    #[test]
    fn products_match_pointwise_evaluation(a in homogeneous(1), b in homogeneous(1), p in vecs(1), t in vecs(2)) {
        let (p, t1, t2) = (&p[0], &t[0], &t[1]);
        let ev = |f: &QForm, ts: &[Vec<Rational>]| f.evaluate(p, ts);
        let wedge = a.mul(&b);
        let expect = ev(&a, &[t1.clone()]) * ev(&b, &[t2.clone()]) - ev(&a, &[t2.clone()]) * ev(&b, &[t1.clone()]);
        prop_assert_eq!(ev(&wedge, &[t1.clone(), t2.clone()]), expect);
        let sum = a.add(&b);
        prop_assert_eq!(ev(&sum, &[t1.clone()]), ev(&a, &[t1.clone()]) + ev(&b, &[t1.clone()]));
    }

    #[test]
    fn canonical_form_is_sound(a in homogeneous(1), b in homogeneous(1), pts in vecs(4), ts in vecs(4)) {
        // equal canonical maps iff equal as functions, probed at four random points
        let diff = a.sub(&b);
        let values: Vec<Rational> = (0..4).map(|i| diff.evaluate(&pts[i], &[ts[i].clone()])).collect();
        if diff.is_zero() {
            prop_assert!(values.iter().all(|v| *v == q(0)));
        } else {
            prop_assert!(values.iter().any(|v| *v != q(0)), "{} vanishes at every probe", diff);
        }
    }
}
