use std::fmt;

use num_bigint::BigInt;

/// The shared expression language for states, fields and forms.
///
/// Juxtaposition is operator application and associates to the right:
/// `(lower e 1 (dv)) (lower f 1 (dv)) |0>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A non-negative integer literal.
    Num(BigInt),
    /// A variable: `v`, `dv`, `w`, `x`, `z3`, `u[12]`, `du[21]`, ...
    Sym(String),
    Neg(Box<Expr>),
    /// Two or more summands; subtraction is a `Neg` summand.
    Sum(Vec<Expr>),
    /// Two or more factors joined by `*`.
    Prod(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// `(lower a k (form))` or `(raise a n (form))`; classical ops omit the form.
    Op { raise: bool, lie: String, order: u32, form: Option<Box<Expr>> },
    Apply(Box<Expr>, Box<Expr>),
    Vacuum,
    /// Two or more factors joined by `(x)`.
    Tensor(Vec<Expr>),
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Tensor(_) => 0,
            Expr::Sum(_) => 1,
            Expr::Prod(_) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Apply(..) => 4,
            Expr::Pow(..) => 5,
            Expr::Num(_) | Expr::Sym(_) | Expr::Op { .. } | Expr::Vacuum => 6,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Vacuum => write!(f, "|0>"),
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, 3)
            }
            Expr::Sum(xs) => {
                xs[0].write_at(f, 2)?;
                for x in &xs[1..] {
                    match x {
                        Expr::Neg(y) => {
                            write!(f, " - ")?;
                            y.write_at(f, 2)?;
                        }
                        _ => {
                            write!(f, " + ")?;
                            x.write_at(f, 2)?;
                        }
                    }
                }
                Ok(())
            }
            Expr::Prod(xs) => {
                // a leading product would merge into this one
                if matches!(xs[0], Expr::Prod(_)) {
                    xs[0].write_at(f, 3)?;
                } else {
                    xs[0].write_at(f, 2)?;
                }
                for x in &xs[1..] {
                    write!(f, "*")?;
                    x.write_at(f, 3)?;
                }
                Ok(())
            }
            Expr::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "/")?;
                b.write_at(f, 3)
            }
            Expr::Pow(b, e) => {
                b.write_at(f, 6)?;
                write!(f, "^{e}")
            }
            Expr::Op { raise, lie, order, form } => {
                write!(f, "({} {lie} {order}", if *raise { "raise" } else { "lower" })?;
                if let Some(p) = form {
                    // `(x)` alone would lex as the tensor sign
                    write!(f, "{}", if matches!(&**p, Expr::Sym(s) if s == "x") { " ( " } else { " (" })?;
                    p.write_at(f, 0)?;
                    write!(f, ")")?;
                }
                write!(f, ")")
            }
            Expr::Apply(a, b) => {
                a.write_at(f, 5)?;
                write!(f, " ")?;
                b.write_at(f, 4)
            }
            Expr::Tensor(xs) => {
                xs[0].write_at(f, 1)?;
                for x in &xs[1..] {
                    write!(f, " (x) ")?;
                    x.write_at(f, 1)?;
                }
                Ok(())
            }
        }
    }
}

/// Prints the canonical text; `parse` inverts it.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
