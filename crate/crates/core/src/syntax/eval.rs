use num_traits::{One, Zero};

use super::ast::Expr;
use super::parse::parse;
use crate::config::{simplex_space, u, ConfigForm};
use crate::envelope::{Envelope, Flavor, LoopElem, VacVec};
use crate::exact::{RatFrac, Rational, Vars};
use crate::local::VForm;
use crate::{Error, Result};

fn semantic<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Semantic(msg.into()))
}

fn rational_of(e: &Expr) -> Option<Rational> {
    eval_vform(e).ok().and_then(|f| f.as_constant())
}

/// Evaluate a polynomial form in `v, dv`.
pub fn eval_vform(e: &Expr) -> Result<VForm> {
    match e {
        Expr::Num(n) => Ok(VForm::constant(Rational::from_integer(n.clone()))),
        Expr::Sym(s) if s == "v" => Ok(VForm::power(1)),
        Expr::Sym(s) if s == "dv" => Ok(VForm::power_dt(0)),
        // `v0, v1, ...` name the degree-zero basis v(1-v), v^2(1-v), ...
        Expr::Sym(s) if s.len() > 1 && s.starts_with('v') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
            let m: usize = s[1..].parse().map_err(|_| Error::Semantic(format!("index of `{s}` out of range")))?;
            Ok(VForm::e0(m))
        }
        Expr::Sym(s) => semantic(format!("unknown variable `{s}` in a v-form")),
        Expr::Neg(x) => Ok(eval_vform(x)?.neg()),
        Expr::Sum(xs) => xs.iter().try_fold(VForm::zero(), |acc, x| Ok(acc.add(&eval_vform(x)?))),
        Expr::Prod(xs) => xs.iter().try_fold(VForm::one(), |acc, x| Ok(acc.mul(&eval_vform(x)?))),
        Expr::Div(a, b) => match eval_vform(b)?.as_constant() {
            Some(c) if !c.is_zero() => Ok(eval_vform(a)?.scale(&c.recip())),
            _ => semantic("v-forms can only be divided by non-zero numbers"),
        },
        Expr::Pow(b, k) if *k >= 0 => {
            let base = eval_vform(b)?;
            Ok((0..*k).fold(VForm::one(), |acc, _| acc.mul(&base)))
        }
        Expr::Pow(..) => semantic("negative powers of v-forms"),
        _ => semantic(format!("`{e}` is not a v-form")),
    }
}

enum Val {
    Scalar(Rational),
    Op(LoopElem),
    State(VacVec),
}

fn scale_op(x: &LoopElem, c: &Rational) -> LoopElem {
    x.iter().map(|(g, d)| (*g, d * c)).collect()
}

fn eval_val(env: &Envelope, e: &Expr) -> Result<Val> {
    Ok(match e {
        Expr::Num(n) => Val::Scalar(Rational::from_integer(n.clone())),
        Expr::Vacuum => Val::State(VacVec::vacuum()),
        Expr::Sym(s) => return semantic(format!("unexpected variable `{s}` in a state")),
        Expr::Neg(x) => match eval_val(env, x)? {
            Val::Scalar(c) => Val::Scalar(-c),
            Val::Op(o) => Val::Op(scale_op(&o, &-Rational::one())),
            Val::State(v) => Val::State(v.neg()),
        },
        Expr::Sum(xs) => {
            let mut it = xs.iter().map(|x| eval_val(env, x));
            let mut acc = it.next().expect("sums have summands")?;
            for v in it {
                acc = match (acc, v?) {
                    (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a + b),
                    (Val::Op(mut a), Val::Op(b)) => {
                        a.extend(b);
                        Val::Op(a)
                    }
                    (Val::State(a), Val::State(b)) => Val::State(a.add(&b)),
                    _ => return semantic("summands of different kinds"),
                };
            }
            acc
        }
        Expr::Prod(xs) => {
            let mut scalar = Rational::one();
            let mut other: Option<Val> = None;
            for x in xs {
                match eval_val(env, x)? {
                    Val::Scalar(c) => scalar *= c,
                    v if other.is_none() => other = Some(v),
                    _ => return semantic("use juxtaposition, not `*`, to apply operators"),
                }
            }
            match other {
                None => Val::Scalar(scalar),
                Some(Val::Op(o)) => Val::Op(scale_op(&o, &scalar)),
                Some(Val::State(v)) => Val::State(v.scale(&scalar)),
                Some(Val::Scalar(_)) => unreachable!("scalars are folded"),
            }
        }
        Expr::Div(a, b) => {
            let Val::Scalar(c) = eval_val(env, b)? else { return semantic("division by a non-scalar") };
            if c.is_zero() {
                return semantic("division by zero");
            }
            let r = c.recip();
            match eval_val(env, a)? {
                Val::Scalar(x) => Val::Scalar(x * r),
                Val::Op(o) => Val::Op(scale_op(&o, &r)),
                Val::State(v) => Val::State(v.scale(&r)),
            }
        }
        Expr::Pow(b, k) => match eval_val(env, b)? {
            Val::Scalar(c) if !(c.is_zero() && *k < 0) => {
                let p = num_traits::pow(c, k.unsigned_abs() as usize);
                Val::Scalar(if *k < 0 { p.recip() } else { p })
            }
            _ => return semantic("only numbers can be raised to powers"),
        },
        Expr::Op { raise, lie, order, form } => Val::Op(eval_op(env, *raise, lie, *order, form.as_deref())?),
        Expr::Apply(f, x) => {
            let Val::State(v) = eval_val(env, x)? else { return semantic("operators act on states") };
            match eval_val(env, f)? {
                Val::Op(o) => Val::State(env.act(&o, &v)),
                Val::Scalar(c) => Val::State(v.scale(&c)),
                Val::State(_) => return semantic("a state cannot act on a state"),
            }
        }
        Expr::Tensor(_) => return semantic("tensor products are given site by site"),
    })
}

fn eval_op(env: &Envelope, raise: bool, lie: &str, order: u32, form: Option<&Expr>) -> Result<LoopElem> {
    let Some(a) = env.lie.index_of(lie) else {
        return semantic(format!("unknown Lie basis element `{lie}`"));
    };
    if !raise && order == 0 {
        return semantic("lowering operators need pole order at least 1");
    }
    if order > u16::MAX as u32 {
        return semantic("order out of range");
    }
    let phi = match (env.flavor, form) {
        (Flavor::Classical, None) => VForm::one(),
        // and conversely the raviolo images `(dv)`, `(1)` of classical generators are accepted
        (Flavor::Classical, Some(f)) => match (eval_vform(f), rational_of(f)) {
            (Ok(phi), _) if !raise && phi == VForm::power_dt(0) => VForm::one(),
            (_, Some(c)) => VForm::constant(c),
            _ => return semantic("classical operators carry no v-forms"),
        },
        // a bare operator reads as `a (x) dv/z^k` or `a (x) z^n`, so classical text parses in both flavors
        (Flavor::Raviolo, None) if raise => VForm::one(),
        (Flavor::Raviolo, None) => VForm::power_dt(0),
        (Flavor::Raviolo, Some(f)) => eval_vform(f)?,
    };
    let p = if raise { order as i32 } else { -(order as i32) };
    if !raise && env.flavor == Flavor::Raviolo && phi.minus_coords().is_none() {
        return semantic(format!("`{phi}` does not vanish at v = 0 and v = 1"));
    }
    Ok(env.decompose(a, p, &phi))
}

/// Evaluate a state of the vacuum module.
pub fn eval_state(env: &Envelope, e: &Expr) -> Result<VacVec> {
    match eval_val(env, e)? {
        Val::State(v) => Ok(v),
        Val::Scalar(_) => semantic("expected a state, found a number"),
        Val::Op(_) => semantic("expected a state, found an operator (apply it to |0>)"),
    }
}

fn mentions(e: &Expr, name: &str) -> bool {
    match e {
        Expr::Sym(s) => s == name,
        Expr::Num(_) | Expr::Vacuum => false,
        Expr::Neg(x) | Expr::Pow(x, _) => mentions(x, name),
        Expr::Sum(xs) | Expr::Prod(xs) | Expr::Tensor(xs) => xs.iter().any(|x| mentions(x, name)),
        Expr::Div(a, b) | Expr::Apply(a, b) => mentions(a, name) || mentions(b, name),
        Expr::Op { form, .. } => form.as_deref().is_some_and(|f| mentions(f, name)),
    }
}

/// Evaluate a form on the simplex `S_n` with coefficients in `B_n`. The last point
/// may be written `w` instead of `z_n`.
pub fn eval_form(e: &Expr, n: usize) -> Result<ConfigForm> {
    let sp = simplex_space(n)?;
    let last = format!("z{n}");
    let vars = if mentions(e, "w") {
        if mentions(e, &last) {
            return semantic(format!("`w` and `{last}` name the same point"));
        }
        Vars::with_w(n)
    } else {
        Vars::plain(n)
    };
    let constant = |r: RatFrac| ConfigForm::constant(&sp, r);
    fn as_ratfrac(f: &ConfigForm) -> Option<RatFrac> {
        f.as_constant()
    }
    fn go(e: &Expr, n: usize, vars: Vars, k: &dyn Fn(RatFrac) -> ConfigForm) -> Result<ConfigForm> {
        Ok(match e {
            Expr::Num(x) => k(RatFrac::constant(vars, Rational::from_integer(x.clone()))),
            Expr::Sym(s) if s == "w" => k(RatFrac::var(vars, n - 1)),
            Expr::Sym(s) if s.starts_with('z') => match s[1..].parse::<usize>() {
                Ok(i) if (1..=n).contains(&i) => k(RatFrac::var(vars, i - 1)),
                _ => return semantic(format!("`{s}` is not one of z1..z{n}")),
            },
            Expr::Sym(s) if s.starts_with("u[") || s.starts_with("du[") => {
                let open = s.find('[').expect("labels are bracketed");
                let label: Vec<u8> = s[open + 1..s.len() - 1].bytes().map(|b| b - b'0').collect();
                let coord = u(n, &label, vars).map_err(|_| Error::Semantic(format!("`{s}` is not a coordinate of S_{n}")))?;
                if open == 2 { coord.d() } else { coord }
            }
            Expr::Sym(s) => return semantic(format!("unknown variable `{s}` in a form on S_{n}")),
            Expr::Neg(x) => go(x, n, vars, k)?.neg(),
            Expr::Sum(xs) => {
                let mut acc = go(&xs[0], n, vars, k)?;
                for x in &xs[1..] {
                    acc = acc.add(&go(x, n, vars, k)?);
                }
                acc
            }
            Expr::Prod(xs) => {
                let mut acc = go(&xs[0], n, vars, k)?;
                for x in &xs[1..] {
                    acc = acc.mul(&go(x, n, vars, k)?);
                }
                acc
            }
            Expr::Div(a, b) => {
                let den = go(b, n, vars, k)?;
                let inv = as_ratfrac(&den)
                    .and_then(|r| r.inverse())
                    .ok_or_else(|| Error::Semantic(format!("`{b}` is not invertible in B_{n}")))?;
                go(a, n, vars, k)?.scale_by(&inv)
            }
            Expr::Pow(b, p) => {
                let base = go(b, n, vars, k)?;
                if *p >= 0 {
                    base.pow(*p as u32)
                } else {
                    let inv = as_ratfrac(&base)
                        .and_then(|r| r.inverse())
                        .ok_or_else(|| Error::Semantic(format!("`{b}` is not invertible in B_{n}")))?;
                    k(inv.pow(p.unsigned_abs() as u32))
                }
            }
            _ => return semantic(format!("`{e}` is not a form")),
        })
    }
    go(e, n, vars, &constant)
}

pub fn parse_state(env: &Envelope, src: &str) -> Result<VacVec> {
    eval_state(env, &parse(src)?)
}

pub fn parse_vform(src: &str) -> Result<VForm> {
    eval_vform(&parse(src)?)
}

pub fn parse_form(src: &str, n: usize) -> Result<ConfigForm> {
    eval_form(&parse(src)?, n)
}
