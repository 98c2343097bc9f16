use std::fmt::Write;

use raviolo::coinvariants::{
    expand_coinvariant, reduce, seeded_cases, verify_cases, verify_theorem, worked_example, FiniteModule, RavioloBackend,
    SiteSpec, SiteVector, TensorState,
};
use raviolo::config::{expand_at, in_a_n, lift, local_space, omega12, p_pullback, v_ij, vanishes_at_infinity, RavLocal};
use raviolo::forms::QForm;
use raviolo::envelope::{Envelope, MinusGen};
use raviolo::exact::{q, Vars};
use raviolo::local::cohomology_truncated;
use raviolo::syntax::{eval_form, parse, parse_state, Expr};
use raviolo::thom_sullivan::rav_cover_ranks;
use raviolo::Error;
use serde_json::{json, Value};

use crate::output::{check_range, form_json, Failure, Outcome};
use crate::sitespec::parse_sitespec;
use crate::{Command, Mode};

type Run = Result<Outcome, Failure>;

const E: usize = 0;
const F: usize = 2;

pub fn run(cmd: Command) -> Run {
    match cmd {
        Command::Cohomology { k, d } => cohomology(k, d),
        Command::Statefield { a, b, k, mode } => statefield(&a, &b, k, mode),
        Command::Membership { form, n } => membership(&form, n),
        Command::Expand { form, s, k, n } => expand(&form, s, k, n),
        Command::Omega12Demo { k } => omega12_demo(k),
        Command::Coinvariant { sitespec, k } => coinvariant(&sitespec, k),
        Command::VerifyTheorem { sitespec, cases, seed, k, demo_worked_example } => {
            if demo_worked_example {
                demo(k.unwrap_or(5))
            } else if let Some(spec) = sitespec {
                theorem_sitespec(&spec, k.unwrap_or(4))
            } else {
                theorem_pool(cases, seed, k.unwrap_or(4))
            }
        }
        Command::ThomSullivan { k, d } => thom_sullivan(k, d),
    }
}

fn cohomology(k: usize, d: usize) -> Run {
    check_range("K", k, 1, 32)?;
    check_range("D", d, 1, 12)?;
    let t = cohomology_truncated(k, d)?;
    let text = format!(
        "K = {k}, D = {d}\nH^0 rank {}: {}\nH^1 rank {}: {}\n",
        t.h0_rank,
        t.h0.join(", "),
        t.h1_rank,
        t.h1.join(", ")
    );
    Ok(Outcome::new(true, text, json!({ "table": t })))
}

fn statefield(a: &str, b: &str, k: i32, mode: Mode) -> Run {
    check_range("K", k, 1, 12)?;
    let flavors: &[(&str, Envelope)] = &match mode {
        Mode::Rav => vec![("raviolo", Envelope::raviolo_sl2())],
        Mode::Classical => vec![("classical", Envelope::classical_sl2())],
        Mode::Both => vec![("raviolo", Envelope::raviolo_sl2()), ("classical", Envelope::classical_sl2())],
    };
    let mut ok = true;
    let mut text = String::new();
    let mut results = Vec::new();
    for (name, env) in flavors {
        let av = parse_state(env, a)?;
        let bv = parse_state(env, b)?;
        let y = env.y_recursive(&av, &bv, k);
        let explicit_ok = env.y_explicit(&av, &bv, k) == y;
        let (boundary_ok, chain_map) = match *name {
            "raviolo" => (env.check_boundary(&y).is_ok(), Some(env.chain_map_defect(&av, &bv, k)?.is_zero())),
            _ => (true, None),
        };
        ok &= explicit_ok && boundary_ok && chain_map != Some(false);
        let field = env.render_field(&y);
        writeln!(text, "[{name}] Y(A; x) B = {field}").unwrap();
        writeln!(text, "[{name}] explicit = recursive: {explicit_ok}; boundary conditions: {boundary_ok}").unwrap();
        if let Some(c) = chain_map {
            writeln!(text, "[{name}] chain map: {c}").unwrap();
        }
        results.push(json!({
            "flavor": name, "field": field, "explicit_equals_recursive": explicit_ok,
            "boundary_ok": boundary_ok, "chain_map": chain_map,
        }));
    }
    Ok(Outcome::new(ok, text, json!({ "precision": k, "results": results })))
}

fn membership(form: &str, n: usize) -> Run {
    check_range("N", n, 1, 4)?;
    let f = eval_form(&parse(form)?, n)?;
    let report = in_a_n(&f)?;
    let text = format!("{f}: {}\n", if report.member { format!("member of A_{n}") } else { format!("rejected: {}", report.describe()) });
    Ok(Outcome::new(report.member, text, json!({ "form": form_json(&f), "report": report })))
}

/// Number of points a form mentions: labels of `u[..]`, indices of `z_i`, and `w` after them.
fn points_of(e: &Expr) -> usize {
    fn walk(e: &Expr, labels: &mut usize, zmax: &mut usize, w: &mut bool) {
        match e {
            Expr::Sym(s) if s == "w" => *w = true,
            Expr::Sym(s) if s.starts_with('z') => *zmax = (*zmax).max(s[1..].parse().unwrap_or(0)),
            Expr::Sym(s) if s.ends_with(']') => *labels = (*labels).max(s.len() - s.find('[').unwrap() - 2),
            Expr::Neg(x) | Expr::Pow(x, _) => walk(x, labels, zmax, w),
            Expr::Sum(xs) | Expr::Prod(xs) | Expr::Tensor(xs) => xs.iter().for_each(|x| walk(x, labels, zmax, w)),
            Expr::Div(a, b) | Expr::Apply(a, b) => {
                walk(a, labels, zmax, w);
                walk(b, labels, zmax, w);
            }
            _ => {}
        }
    }
    let (mut labels, mut zmax, mut w) = (0, 0, false);
    walk(e, &mut labels, &mut zmax, &mut w);
    labels.max(zmax + w as usize)
}

fn series_json(x: &RavLocal) -> Value {
    let terms: Vec<Value> = x.terms().map(|(p, f)| json!({ "power": p, "form": form_json(f) })).collect();
    json!({ "text": x.to_string(), "terms": terms })
}

fn expand(form: &str, s: usize, k: i32, n: Option<usize>) -> Run {
    check_range("K", k, -8, 12)?;
    let e = parse(form)?;
    let n = check_range("N", n.unwrap_or_else(|| points_of(&e)), 2, 4)?;
    check_range("s", s, 1, n - 1)?;
    let f = eval_form(&e, n)?;
    let x = expand_at(&f, s, k)?;
    let text = format!("expansion at w = z{s}: {x}\n");
    Ok(Outcome::new(true, text, json!({ "site": s, "points": n, "precision": k, "series": series_json(&x) })))
}

fn omega12_demo(k: i32) -> Run {
    check_range("K", k, 1, 8)?;
    let o = omega12()?;
    let closed = o.d().is_zero();
    let member = in_a_n(&o)?.member;
    let at_infinity = vanishes_at_infinity(&o);
    let mut ok = closed && member && at_infinity;
    let mut text = format!("Omega_12 = {o}\nclosed: {closed}; in A_3: {member}; vanishes at infinity: {at_infinity}\n");
    let mut expansions = Vec::new();
    for s in [1, 2] {
        let x = expand_at(&o, s, k)?;
        let regular = x.min_degree() >= 0;
        ok &= regular;
        writeln!(text, "expansion at w = z{s}: {x} (no negative powers: {regular})").unwrap();
        expansions.push(json!({ "site": s, "series": series_json(&x), "regular": regular }));
    }
    // the pullback lands in {v} x S_2 over B_3: block 0 is the line, block 1 the simplex with labels 12, 21
    let sp = local_space(2)?;
    let coord = |b, l| lift(&QForm::coordinate(&sp, b, l), Vars::with_w(3));
    let expected = [("v12", v_ij(1, 2)?, coord(1, 0)), ("v13", v_ij(1, 3)?, coord(0, 0)), ("v23", v_ij(2, 3)?, coord(1, 1))];
    let mut pullbacks = Vec::new();
    for (name, f, want) in expected {
        let got = p_pullback(1, &f)?;
        let equal = got == want;
        ok &= equal;
        writeln!(text, "p*(3->1) {name} = {got} (expected {want}: {equal})").unwrap();
        pullbacks.push(json!({ "form": name, "pullback": got.to_string(), "expected": want.to_string(), "equal": equal }));
    }
    Ok(Outcome::new(
        ok,
        text,
        json!({
            "omega12": form_json(&o), "closed": closed, "member": member, "vanishes_at_infinity": at_infinity,
            "expansions": expansions, "pullbacks": pullbacks,
        }),
    ))
}

fn coinvariant(spec: &str, k: i32) -> Run {
    check_range("K", k, 1, 12)?;
    let env = Envelope::raviolo_sl2();
    let entries = parse_sitespec(&env, spec)?;
    let n = check_range("N", entries.len(), 1, 4)?;
    let (sites, vecs): (Vec<SiteSpec>, Vec<SiteVector>) = entries.iter().map(|(s, v, _)| (s.clone(), v.clone())).unzip();
    let backend = RavioloBackend::new(&env, n)?;
    let rep = reduce(&backend, &TensorState::product(&sites, backend.one(), &vecs)?)?;
    let rendered = rep.render(&env, |c| c.to_string());
    let expansion = if n >= 2 { expand_coinvariant(&rep, k).ok().map(|x| x.render(&env)) } else { None };
    let mut text = format!("representative: {rendered}\n");
    if let Some(x) = &expansion {
        writeln!(text, "expanded at z{n} -> z{}: {x}", n - 1).unwrap();
    }
    let labels: Vec<&str> = entries.iter().map(|(_, _, l)| l.as_str()).collect();
    Ok(Outcome::new(true, text, json!({ "sites": labels, "precision": k, "representative": rendered, "expansion": expansion })))
}

fn theorem_sitespec(spec: &str, k: i32) -> Run {
    check_range("K", k, 1, 8)?;
    let env = Envelope::raviolo_sl2();
    let mut entries = parse_sitespec(&env, spec)?;
    check_range("N", entries.len(), 2, 4)?;
    let state = |e: (SiteSpec, SiteVector, String)| match e.1 {
        SiteVector::Vac(v) => Ok((v, e.2)),
        _ => Err(Failure::Lib(Error::Semantic(format!("`{}` must be a vacuum-module state", e.2)))),
    };
    let (a, a_label) = state(entries.pop().unwrap())?;
    let (b, b_label) = state(entries.pop().unwrap())?;
    let far: Vec<(SiteSpec, SiteVector)> = entries.iter().map(|(s, v, _)| (s.clone(), v.clone())).collect();
    let far_label = entries.iter().map(|(_, _, l)| l.clone()).collect::<Vec<_>>().join(" (x) ");
    let r = verify_theorem(&env, &a, &b, &far, k)?;
    let text = theorem_text(1, &a_label, &b_label, &far_label, r.equal, &r.lhs, &r.rhs);
    let case = json!({ "a": a_label, "b": b_label, "far": far_label, "report": r });
    Ok(Outcome::new(r.equal, text, json!({ "mode": "sitespec", "precision": k, "cases": [case] })))
}

fn theorem_text(i: usize, a: &str, b: &str, far: &str, equal: bool, lhs: &str, rhs: &str) -> String {
    let mut t = format!("case {i}: A = {a}, B = {b}, far = {far}: {}\n", if equal { "equal" } else { "NOT EQUAL" });
    if !equal {
        writeln!(t, "  lhs: {lhs}\n  rhs: {rhs}").unwrap();
    }
    t
}

fn theorem_pool(cases: usize, seed: u64, k: i32) -> Run {
    check_range("cases", cases, 1, 10_000)?;
    check_range("K", k, 1, 8)?;
    let env = Envelope::raviolo_sl2();
    let outcomes = verify_cases(&env, &seeded_cases(&env, cases, seed), k)?;
    let ok = outcomes.iter().all(|c| c.report.equal);
    let mut text = String::new();
    for (i, c) in outcomes.iter().enumerate() {
        text += &theorem_text(i + 1, &c.a, &c.b, &c.far, c.report.equal, &c.report.lhs, &c.report.rhs);
    }
    let passed = outcomes.iter().filter(|c| c.report.equal).count();
    writeln!(text, "{passed}/{} cases equal (seed {seed}, K = {k})", outcomes.len()).unwrap();
    Ok(Outcome::new(ok, text, json!({ "mode": "pool", "seed": seed, "precision": k, "cases": outcomes })))
}

fn demo(k: i32) -> Run {
    check_range("K", k, 1, 8)?;
    let env = Envelope::raviolo_sl2();
    let b = env.word(&[MinusGen::new(F, 5, 1, 0)]);
    let variants = [
        ("1", (SiteSpec::trivial(1), SiteVector::Triv)),
        ("adj e - adj h + 2*adj f", (SiteSpec::finite(1, FiniteModule::adjoint(&env.lie)), SiteVector::Module(vec![q(1), q(-1), q(2)]))),
    ];
    let b_label = env.render_vec(&b);
    let mut ok = true;
    let mut text = format!("A = (lower e 1 (dv)) |0>, B = {b_label}, K = {k}\n");
    let mut cases = Vec::new();
    for (label, far) in variants {
        let (lhs, rhs) = worked_example(&env, E, &b, &[far], k)?;
        let equal = lhs == rhs;
        ok &= equal;
        let (l, r) = (lhs.render(&env), rhs.render(&env));
        writeln!(text, "far site {label}: {}\n  final display: {r}", if equal { "equal" } else { "NOT EQUAL" }).unwrap();
        if !equal {
            writeln!(text, "  base change: {l}").unwrap();
        }
        cases.push(json!({ "a": "(lower e 1 (dv)) |0>", "b": b_label, "far": label,
            "report": { "n": 3, "precision": k, "equal": equal, "lhs": l, "rhs": r } }));
    }
    Ok(Outcome::new(ok, text, json!({ "mode": "worked-example", "precision": k, "cases": cases })))
}

fn thom_sullivan(k: usize, d: usize) -> Run {
    check_range("K", k, 1, 8)?;
    check_range("D", d, 1, 3)?;
    let rows = (1..=k).map(|w| rav_cover_ranks(w, d)).collect::<Result<Vec<_>, _>>()?;
    let ok = rows.iter().all(|r| r.consistent());
    let mut text = String::from("K  Th        Cech      local\n");
    for r in &rows {
        writeln!(text, "{:<2} {:<9} {:<9} {:?}", r.k, format!("{:?}", r.th), format!("{:?}", r.cech), r.local).unwrap();
    }
    if !ok {
        text += "rank mismatch\n";
    }
    Ok(Outcome::new(ok, text, json!({ "D": d, "rows": rows })))
}
