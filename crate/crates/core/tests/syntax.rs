use num_bigint::BigInt;
use proptest::prelude::*;
use raviolo::config::{in_a_n, simplex_space, u};
use raviolo::envelope::{Envelope, MinusGen, VacVec};
use raviolo::exact::{q, RatFrac, Vars};
use raviolo::local::VForm;
use raviolo::syntax::{parse, parse_form, parse_state, parse_vform, Expr};
use raviolo::Error;

#[test]
fn lowering_dv_on_the_vacuum() {
    let env = Envelope::raviolo_sl2();
    let v = parse_state(&env, "(lower e 1 (dv)) |0>").unwrap();
    let expect = VacVec::monomial(vec![MinusGen::new(0, 1, 1, 0)], q(1));
    assert_eq!(v, expect);
    assert_eq!(env.render_vec(&v), "(lower e 1 (dv)) |0>");
}

#[test]
fn indexed_minus_forms() {
    let env = Envelope::raviolo_sl2();
    let v = parse_state(&env, "(lower e 1 (dv)) (lower f 2 (v0)) |0>").unwrap();
    let w = parse_state(&env, "(lower e 1 (dv)) (lower f 2 (v*(1 - v))) |0>").unwrap();
    assert_eq!(v, w);
    assert_eq!(parse_vform("v1").unwrap(), parse_vform("v^2 - v^3").unwrap());
}

#[test]
fn rendered_states_parse_back() {
    let env = Envelope::raviolo_sl2();
    let srcs = [
        "(lower f 2 (v - v^2)) (lower e 1 (dv)) |0>",
        "(raise e 0 (v)) (lower f 1 (dv)) |0>",
        "2*(lower h 1 (v^2*dv)) |0> - (lower e 2 (v - v^3)) |0>",
        "(raise h 1 (1)) (lower e 1 (v - v^2)) (lower f 1 (dv)) |0>",
    ];
    for s in srcs {
        let v = parse_state(&env, s).unwrap();
        let back = parse_state(&env, &env.render_vec(&v)).unwrap();
        assert_eq!(v, back, "{s}");
    }
}

#[test]
fn classical_states() {
    let env = Envelope::classical_sl2();
    let v = parse_state(&env, "(raise e 0) (lower f 1) |0>").unwrap();
    assert_eq!(parse_state(&env, &env.render_vec(&v)).unwrap(), v);
    assert_eq!(parse_state(&env, "(raise e 0 (1)) (lower f 1 (dv)) |0>").unwrap(), v);
    assert!(matches!(parse_state(&env, "(lower e 1 (v0)) |0>"), Err(Error::Semantic(_))));
}

#[test]
fn bare_operators_default_to_dv_and_one() {
    let env = Envelope::raviolo_sl2();
    let a = parse_state(&env, "(raise h 0) (lower e 1) |0>").unwrap();
    let b = parse_state(&env, "(raise h 0 (1)) (lower e 1 (dv)) |0>").unwrap();
    assert_eq!(a, b);
}

#[test]
fn vforms() {
    let f = parse_vform("3*v^2*dv - v/2").unwrap();
    let half = q(1) / q(2);
    let expect = VForm::power(2).mul(&VForm::power_dt(0)).scale(&q(3)).add(&VForm::power(1).scale(&-half));
    assert_eq!(f, expect);
    let g = parse_vform("v*(3*v*dv) - 1/2*v").unwrap();
    assert_eq!(f, g);
    assert!(parse_vform("v^-1").is_err());
}

#[test]
fn the_double_pole_form_is_in_a2() {
    let f = parse_form("u[12]*u[21]/(z1-z2)", 2).unwrap();
    let sp = simplex_space(2).unwrap();
    let vars = Vars::plain(2);
    let dz = RatFrac::var(vars, 0).sub(&RatFrac::var(vars, 1));
    let g = u(2, &[1, 2], vars).unwrap().mul(&u(2, &[2, 1], vars).unwrap()).scale_by(&dz.inverse().unwrap());
    assert_eq!(f, g);
    assert_eq!(f.space(), &sp);
    assert!(in_a_n(&f).unwrap().member);
}

#[test]
fn w_names_the_last_point() {
    let a = parse_form("u[123]/(w-z2)", 3).unwrap();
    assert!(!in_a_n(&a).unwrap().member);
    assert!(matches!(parse_form("w - z3", 3), Err(Error::Semantic(_))));
}

#[test]
fn semantic_errors() {
    let env = Envelope::raviolo_sl2();
    for s in [
        "(lower q 1 (dv)) |0>",
        "(lower e 0 (dv)) |0>",
        "(lower e 1 (v)) |0>",
        "(lower e 1 (dv))",
        "3",
        "|0> (x) |0>",
    ] {
        assert!(matches!(parse_state(&env, s), Err(Error::Semantic(_))), "{s}");
    }
    assert!(matches!(parse_form("u[13]", 2), Err(Error::Semantic(_))));
    assert!(matches!(parse_form("1/(z1-z1)", 2), Err(Error::Semantic(_))));
    assert!(matches!(parse_form("1/u[12]", 2), Err(Error::Semantic(_))));
}

#[test]
fn syntax_errors_carry_positions() {
    let cases = [("(lower e 1 (dv) |0>", 1, 17), ("v + ", 1, 5), ("v\n  $", 2, 3), ("u[]", 1, 1), ("x^y", 1, 3)];
    for (src, line, col) in cases {
        match parse(src) {
            Err(Error::Syntax { line: l, col: c, .. }) => assert_eq!((l, c), (line, col), "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
}

#[test]
fn tensor_and_op_forms_print_canonically() {
    for s in ["a (x) b + c (x) |0>", "(lower e 1 ( x))", "-a*-b", "(a*b)*c", "a/b/c", "a/(b/c)", "(x^2)^-3", "(f g) h", "f g h"] {
        let e = parse(s).unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} printed as {e}");
    }
}

fn sym() -> impl Strategy<Value = Expr> {
    prop_oneof![
        prop::sample::select(vec!["v", "dv", "w", "x", "z1", "z12", "u[12]", "du[321]", "e", "h"]).prop_map(|s| Expr::Sym(s.into())),
        (0u32..1000).prop_map(|n| Expr::Num(BigInt::from(n))),
        Just(Expr::Vacuum),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    sym().prop_recursive(4, 40, 4, |inner| {
        let many = || prop::collection::vec(inner.clone(), 2..4);
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            many().prop_map(Expr::Sum),
            many().prop_map(Expr::Prod),
            many().prop_map(Expr::Tensor),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -4i64..5).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Apply(Box::new(a), Box::new(b))),
            (any::<bool>(), prop::sample::select(vec!["e", "f", "h"]), 0u32..4, prop::option::of(inner.clone())).prop_map(
                |(raise, lie, order, form)| Expr::Op { raise, lie: lie.into(), order, form: form.map(Box::new) }
            ),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }
}
