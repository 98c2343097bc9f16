//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::gens::{a2_member, arb_element, interpolate, local_minus, minus, plus};
use common::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use raviolo::coinvariants::{
    classical_state_pool, classical_verify, seeded_cases, verify_cases, worked_example, FiniteModule, SiteSpec, SiteVector,
};
use raviolo::config::*;
use raviolo::envelope::{pole_depth, Envelope, FieldElement, MinusGen, Monomial, VacVec};
use raviolo::exact::{q, Vars};
use raviolo::forms::QForm;
use raviolo::local::{cohomology_truncated, local_term, sdr_defect_minus, sdr_defect_plus, VForm};
use raviolo::syntax::parse_form;
use raviolo::thom_sullivan::{rav_cover_ranks, SemiCosimplicial};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Run `test` on `cases` values of `strategy` with a fixed seed.
fn random<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), String>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&strategy, |x| test(x).map_err(proptest::test_runner::TestCaseError::fail))
        .map_err(|e| e.to_string())
}

fn cohomology() -> Check {
    let start = Instant::now();
    for k in 1..=8 {
        let t = cohomology_truncated(k, 2).map_err(|e| e.to_string())?;
        ensure((t.h0_rank, t.h1_rank) == (k + 1, k), || format!("K = {k}: ranks {} {}", t.h0_rank, t.h1_rank))?;
        ensure(t.h0_reps.iter().zip(0..).all(|(r, j)| *r == local_term(j, VForm::one())), || format!("K = {k}: H0 {:?}", t.h0))?;
        ensure(t.h1_reps.iter().zip(1..).all(|(r, j)| *r == local_term(-j, VForm::power_dt(0))), || format!("K = {k}: H1 {:?}", t.h1))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("K = 1..8 in {elapsed:.2?}"))
}

fn sdr() -> Check {
    random(100, plus(), |x| ensure(sdr_defect_plus(&x).is_zero(), || format!("plus defect on {x}")))?;
    random(100, minus(), |x| ensure(sdr_defect_minus(&x).is_zero(), || format!("minus defect on {x}")))?;
    Ok("100 plus and 100 minus elements".into())
}

fn membership() -> Check {
    let err = |e: raviolo::Error| e.to_string();
    let img = iota_n(&u(2, &[1, 2], Vars::plain(2)).map_err(err)?).map_err(err)?;
    ensure(img.to_string() == "u[123] + u[132] + u[312]", || format!("iota_2(u12) = {img}"))?;
    let good = a2_member();
    ensure(in_a_n(&good).map_err(err)?.member, || "u12 u21/(z1-z2) rejected".into())?;
    ensure(in_a_n(&iota_n(&good).map_err(err)?).map_err(err)?.member, || "iota image rejected".into())?;
    for src in ["u[123]/(w-z2)", "du[123]/(w-z2)"] {
        let r = in_a_n(&parse_form(src, 3).map_err(err)?).map_err(err)?;
        ensure(!r.member, || format!("{src} accepted"))?;
        let v = &r.violations[0];
        ensure((v.i, v.j) == (3, 2) && v.face == ["132", "312", "321"], || format!("{src}: {}", r.describe()))?;
    }
    Ok("display, two members, two rejections at face (3,2)".into())
}

fn expansion() -> Check {
    let err = |e: raviolo::Error| e.to_string();
    let k = kernel_element().map_err(err)?;
    ensure(in_a_n(&k).map_err(err)?.member, || "kernel element not in A'_3".into())?;
    for s in [1, 2] {
        ensure(expand_at(&k, s, 5).map_err(err)?.is_zero(), || format!("kernel element nonzero at site {s}"))?;
    }
    let o = omega12().map_err(err)?;
    ensure(o.d().is_zero(), || "Omega_12 not closed".into())?;
    ensure(in_a_n(&o).map_err(err)?.member && vanishes_at_infinity(&o), || "Omega_12 not in A'_3".into())?;
    for s in [1, 2] {
        let x = expand_at(&o, s, 4).map_err(err)?;
        ensure(x.min_degree() >= 0, || format!("Omega_12 at site {s}: {x}"))?;
    }
    let sp = local_space(2).map_err(err)?;
    let coord = |b, l| lift(&QForm::coordinate(&sp, b, l), Vars::with_w(3));
    for ((i, j), want) in [((1, 2), coord(1, 0)), ((1, 3), coord(0, 0)), ((2, 3), coord(1, 1))] {
        let got = p_pullback(1, &v_ij(i, j).map_err(err)?).map_err(err)?;
        ensure(got == want, || format!("p*(v{i}{j}) = {got}, expected {want}"))?;
    }
    random(100, local_minus(), |(x, s)| {
        let g = g_build(s, &x).map_err(|e| e.to_string())?;
        let back = expand_at(&g, s, 4).map_err(|e| e.to_string())?;
        ensure(back == x, || format!("round trip at site {s}: {x} -> {back}"))
    })?;
    Ok("kernel, Omega_12, three pullbacks, 100 round trips".into())
}

fn state_field_pair(env: &Envelope, a: &Monomial, b: &Monomial) -> Result<(), String> {
    let (av, bv) = (mono_vec(a), mono_vec(b));
    let r = env.y_recursive(&av, &bv, 6);
    ensure(r == env.y_explicit(&av, &bv, 6), || format!("explicit differs for A = {a:?}, B = {b:?}"))?;
    env.check_boundary(&r).map_err(|e| e.to_string())?;
    ensure(r.min_degree() >= -((pole_depth(a) + pole_depth(b)) as i32), || format!("pole order for {a:?}"))?;
    let defect = env.chain_map_defect(&av, &bv, 6).map_err(|e| e.to_string())?;
    ensure(defect.is_zero(), || format!("chain map defect for A = {a:?}, B = {b:?}"))
}

fn state_field() -> Check {
    let env = Envelope::raviolo_sl2();
    let states = pbw_monomials(&raviolo_pool(), 2);
    let pairs: Vec<(Monomial, Monomial)> =
        pbw_monomials(&raviolo_pool(), 3).into_iter().flat_map(|a| states.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = pairs.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> =
            pairs.chunks(chunk).map(|part| s.spawn(|| part.iter().try_for_each(|(a, b)| state_field_pair(&env, a, b)))).collect();
        handles.into_iter().try_for_each(|h| h.join().map_err(|_| "worker panicked".to_string())?)
    })?;
    Ok(format!("{} pairs at K = 6", pairs.len()))
}

fn worked() -> Check {
    let env = Envelope::raviolo_sl2();
    let b = env.word(&[MinusGen::new(F, 5, 1, 0)]);
    let adjoint = (SiteSpec::finite(1, FiniteModule::adjoint(&env.lie)), SiteVector::Module(vec![q(1), q(-1), q(2)]));
    for (name, far) in [("trivial", (SiteSpec::trivial(1), SiteVector::Triv)), ("adjoint", adjoint)] {
        let (lhs, rhs) = worked_example(&env, E, &b, &[far], 5).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("{name}: {} != {}", lhs.render(&env), rhs.render(&env)))?;
    }
    Ok("trivial and adjoint far sites at K = 5".into())
}

fn theorem() -> Check {
    let start = Instant::now();
    let env = Envelope::raviolo_sl2();
    let cases = seeded_cases(&env, 24, 7);
    let outcomes = verify_cases(&env, &cases, 4).map_err(|e| e.to_string())?;
    for o in &outcomes {
        ensure(o.report.equal, || format!("A = {}, B = {}, far {}: {} != {}", o.a, o.b, o.far, o.report.lhs, o.report.rhs))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    let trivial = cases.iter().filter(|c| c.far_label == "1").count();
    Ok(format!("{} cases ({trivial} trivial far site) in {elapsed:.2?}", outcomes.len()))
}

fn classical() -> Check {
    let env = Envelope::classical_sl2();
    let pool = classical_state_pool(&env);
    let adjoint = (SiteSpec::finite(1, FiniteModule::adjoint(&env.lie)), SiteVector::Module(vec![q(1), q(-2), q(1)]));
    for (i, (na, a)) in pool.iter().enumerate() {
        let (nb, b) = &pool[(5 * i + 3) % pool.len()];
        for far in [(SiteSpec::trivial(1), SiteVector::Triv), adjoint.clone()] {
            let r = classical_verify(&env, a, b, &[far], 4).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("A = {na}, B = {nb}: {} != {}", r.lhs, r.rhs))?;
        }
    }
    // a_{-1}|0> at x against b_{-1}|0>: x^{-1} [a,b]_{-1}|0> + a_{-1} b_{-1}|0> + O(x) at level zero
    for a in [E, H, F] {
        for b in [E, H, F] {
            let av = env.word(&[MinusGen::classical(a, 1)]);
            let bv = env.word(&[MinusGen::classical(b, 1)]);
            let mut expected = FieldElement::zero(1);
            for (c, coeff) in env.lie.bracket(a, b) {
                expected.insert(-1, vec![MinusGen::classical(*c, 1)], VForm::constant(coeff.clone()));
            }
            for (m, c) in env.word(&[MinusGen::classical(a, 1), MinusGen::classical(b, 1)]).terms() {
                expected.insert(0, m.clone(), VForm::constant(c.clone()));
            }
            let y = env.y_recursive(&av, &bv, 1);
            ensure(y == expected, || format!("current a = {a}, b = {b}: {}", env.render_field(&y)))?;
        }
    }
    ensure(env.y_recursive(&VacVec::vacuum(), &VacVec::vacuum(), 2) == FieldElement::from_vec(&VacVec::vacuum(), 2), || {
        "Y(|0>) is not the identity".into()
    })?;
    Ok(format!("{} pool states, 9 currents", pool.len()))
}

fn thom_sullivan() -> Check {
    let dg = SemiCosimplicial::rav_cover(3).map_err(|e| e.to_string())?;
    random(100, arb_element(3), |(a, r, s)| {
        let x = interpolate(&dg, &a, &r, &s);
        ensure(x.validate(&dg).valid, || "invalid family".into())?;
        ensure(x.d().integrate()[1] == dg.cech_d(0, &x.integrate()[0]), || "integration does not commute with d".into())
    })?;
    for k in 1..=6 {
        let t = rav_cover_ranks(k, 2).map_err(|e| e.to_string())?;
        let local = cohomology_truncated(k, 2).map_err(|e| e.to_string())?;
        let expected = vec![local.h0_rank, local.h1_rank];
        ensure(t.th == expected && t.cech == expected && t.local == expected, || format!("K = {k}: {t:?}"))?;
    }
    Ok("100 chain-map checks, ranks agree for K = 1..6".into())
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Check); 9] = [
        (1, cohomology),
        (2, sdr),
        (3, membership),
        (4, expansion),
        (5, state_field),
        (6, worked),
        (7, theorem),
        (8, classical),
        (9, thom_sullivan),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {n}: PASS ({detail}; {:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
