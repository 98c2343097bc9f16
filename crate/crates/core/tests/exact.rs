use proptest::prelude::*;
use raviolo::exact::{laurent_expand, q, MultiPoly, RatFrac, Rational, Vars};

const N: usize = 3;

/// Arithmetic over `B_3`, kept as a tree so it can be evaluated independently.
#[derive(Clone, Debug)]
enum Tree {
    Var(usize),
    Const(i64),
    InvDiff(usize, usize),
    Add(Box<Tree>, Box<Tree>),
    Sub(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn frac(&self) -> RatFrac {
        let v = Vars::plain(N);
        match self {
            Tree::Var(i) => RatFrac::var(v, *i),
            Tree::Const(c) => RatFrac::constant(v, q(*c)),
            Tree::InvDiff(i, j) => RatFrac::diff_pow(v, *i, *j, -1),
            Tree::Add(a, b) => a.frac().add(&b.frac()),
            Tree::Sub(a, b) => a.frac().sub(&b.frac()),
            Tree::Mul(a, b) => a.frac().mul(&b.frac()),
        }
    }

    fn eval(&self, p: &[Rational]) -> Rational {
        match self {
            Tree::Var(i) => p[*i].clone(),
            Tree::Const(c) => q(*c),
            Tree::InvDiff(i, j) => (&p[*i] - &p[*j]).recip(),
            Tree::Add(a, b) => a.eval(p) + b.eval(p),
            Tree::Sub(a, b) => a.eval(p) - b.eval(p),
            Tree::Mul(a, b) => a.eval(p) * b.eval(p),
        }
    }
}

fn pair() -> impl Strategy<Value = (usize, usize)> {
    (0..N, 0..N).prop_filter("distinct", |(i, j)| i != j)
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![(0..N).prop_map(Tree::Var), (-3i64..4).prop_map(Tree::Const), pair().prop_map(|(i, j)| Tree::InvDiff(i, j))];
    leaf.prop_recursive(4, 24, 2, |t| {
        prop_oneof![
            (t.clone(), t.clone()).prop_map(|(a, b)| Tree::Add(Box::new(a), Box::new(b))),
            (t.clone(), t.clone()).prop_map(|(a, b)| Tree::Sub(Box::new(a), Box::new(b))),
            (t.clone(), t.clone()).prop_map(|(a, b)| Tree::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

/// A rational point with pairwise distinct coordinates.
fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-20i64..21, 1i64..5), N)
        .prop_map(|v| v.into_iter().map(|(a, b)| q(a) / q(b)).collect::<Vec<Rational>>())
        .prop_filter("off the diagonals", |p| (0..N).all(|i| (0..i).all(|j| p[i] != p[j])))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, N), -3i64..4), 1..4)
        .prop_map(|ts| MultiPoly::from_terms(N, ts.into_iter().map(|(e, c)| (e, q(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normalization_is_idempotent(t in tree()) {
        let f = t.frac();
        let again = RatFrac::normalize(f.vars(), f.numerator().clone(), f.denominator().clone());
        prop_assert_eq!(again, f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(t in tree(), p in point()) {
        prop_assert_eq!(t.frac().eval(&p), Some(t.eval(&p)));
    }

    #[test]
    fn laurent_expansion_is_multiplicative(a in tree(), b in tree(), base in 0usize..2, k in 0i32..4) {
        let (f, g) = (a.frac(), b.frac());
        let ef = laurent_expand(&f, base, k, "x");
        let eg = laurent_expand(&g, base, k, "x");
        let prod = ef.mul(&eg);
        let direct = laurent_expand(&f.mul(&g), base, prod.precision(), "x");
        prop_assert_eq!(direct, prod.truncate(prod.precision()));
    }

    #[test]
    fn regularity_survives_polynomial_factors(t in tree(), p in poly(), (i, j) in pair()) {
        let f = t.frac();
        if f.is_regular_in(i, j).unwrap() {
            prop_assert!(f.mul(&RatFrac::poly(f.vars(), p)).is_regular_in(i, j).unwrap());
        }
    }
}

#[test]
fn regularity_needs_two_indices() {
    assert!(RatFrac::one(Vars::plain(2)).is_regular_in(1, 1).is_err());
}
