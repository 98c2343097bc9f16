//! Site specifications: one entry per marked point, joined by `(x)`.
//!
//! An entry is `1` (trivial module), a combination of `adj e`, `adj h`, ...
//! (adjoint module), or a state of the vacuum module.

use raviolo::coinvariants::{FiniteModule, SiteSpec, SiteVector};
use raviolo::envelope::Envelope;
use raviolo::exact::{q, Rational};
use raviolo::syntax::{eval_state, parse, Expr};
use raviolo::{Error, Result};

fn mentions_adj(e: &Expr) -> bool {
    match e {
        Expr::Sym(s) => s == "adj",
        Expr::Neg(x) | Expr::Pow(x, _) => mentions_adj(x),
        Expr::Sum(xs) | Expr::Prod(xs) | Expr::Tensor(xs) => xs.iter().any(mentions_adj),
        Expr::Div(a, b) | Expr::Apply(a, b) => mentions_adj(a) || mentions_adj(b),
        _ => false,
    }
}

fn number(e: &Expr) -> Option<Rational> {
    match e {
        Expr::Num(n) => Some(Rational::from_integer(n.clone())),
        Expr::Neg(x) => number(x).map(|r| -r),
        Expr::Div(a, b) => match (number(a), number(b)) {
            (Some(x), Some(y)) if y != q(0) => Some(x / y),
            _ => None,
        },
        _ => None,
    }
}

fn adjoint_vector(env: &Envelope, e: &Expr) -> Result<Vec<Rational>> {
    let bad = || Error::Semantic(format!("`{e}` is not a combination of `adj <basis>` terms"));
    let add = |mut a: Vec<Rational>, b: Vec<Rational>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    match e {
        Expr::Apply(h, x) if **h == Expr::Sym("adj".into()) => {
            let Expr::Sym(name) = &**x else { return Err(bad()) };
            let i = env.lie.index_of(name).ok_or_else(|| Error::Semantic(format!("unknown Lie basis element `{name}`")))?;
            Ok((0..env.lie.dim()).map(|j| q((i == j) as i64)).collect())
        }
        Expr::Sum(xs) => xs.iter().try_fold(vec![q(0); env.lie.dim()], |acc, x| Ok(add(acc, adjoint_vector(env, x)?))),
        Expr::Neg(x) => Ok(adjoint_vector(env, x)?.into_iter().map(|c| -c).collect()),
        Expr::Prod(xs) => {
            let (nums, rest): (Vec<_>, Vec<_>) = xs.iter().partition(|x| number(x).is_some());
            let [v] = rest.as_slice() else { return Err(bad()) };
            let c: Rational = nums.iter().map(|x| number(x).unwrap()).product();
            Ok(adjoint_vector(env, v)?.into_iter().map(|x| x * &c).collect())
        }
        Expr::Div(a, b) => {
            let c = number(b).filter(|c| *c != q(0)).ok_or_else(bad)?;
            Ok(adjoint_vector(env, a)?.into_iter().map(|x| x / &c).collect())
        }
        _ => Err(bad()),
    }
}

/// Sites `z_1 .. z_N` with their vectors, plus a printable label per entry.
pub fn parse_sitespec(env: &Envelope, src: &str) -> Result<Vec<(SiteSpec, SiteVector, String)>> {
    let entries = match parse(src)? {
        Expr::Tensor(xs) => xs,
        e => vec![e],
    };
    entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let label = e.to_string();
            let idx = i + 1;
            if e == Expr::Num(1.into()) {
                return Ok((SiteSpec::trivial(idx), SiteVector::Triv, label));
            }
            if mentions_adj(&e) {
                let v = adjoint_vector(env, &e)?;
                return Ok((SiteSpec::finite(idx, FiniteModule::adjoint(&env.lie)), SiteVector::Module(v), label));
            }
            Ok((SiteSpec::vacuum(idx), SiteVector::Vac(eval_state(env, &e)?), label))
        })
        .collect()
}
