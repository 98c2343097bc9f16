use num_bigint::BigInt;

use super::ast::Expr;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Ket,
    Tensor,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| Error::Syntax { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let tok = if rest == "(x)" {
            adv(3, &mut i);
            Tok::Tensor
        } else if rest == "|0>" {
            adv(3, &mut i);
            Tok::Ket
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                adv(1, &mut i);
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Num(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                adv(1, &mut i);
            }
            let mut s: String = chars[start..i].iter().collect();
            if (s == "u" || s == "du") && chars.get(i) == Some(&'[') {
                let open = i;
                adv(1, &mut i);
                while i < chars.len() && chars[i].is_ascii_digit() {
                    adv(1, &mut i);
                }
                if chars.get(i) != Some(&']') || i == open + 1 {
                    return Err(err(l0, c0, format!("malformed label after `{s}`")));
                }
                adv(1, &mut i);
                s = chars[start..i].iter().collect();
            }
            Tok::Ident(s)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
            };
            adv(1, &mut i);
            t
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|s| &s.tok)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col));
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let first = self.sum()?;
        if self.peek() != Some(&Tok::Tensor) {
            return Ok(first);
        }
        let mut xs = vec![first];
        while self.eat(&Tok::Tensor) {
            xs.push(self.sum()?);
        }
        Ok(Expr::Tensor(xs))
    }

    fn sum(&mut self) -> Result<Expr> {
        let first = self.prod()?;
        let mut xs = vec![first];
        loop {
            if self.eat(&Tok::Plus) {
                xs.push(self.prod()?);
            } else if self.eat(&Tok::Minus) {
                xs.push(Expr::Neg(Box::new(self.prod()?)));
            } else {
                break;
            }
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Expr::Sum(xs) })
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        let mut open = false;
        loop {
            if self.eat(&Tok::Star) {
                let next = self.unary()?;
                acc = match acc {
                    Expr::Prod(mut xs) if open => {
                        xs.push(next);
                        Expr::Prod(xs)
                    }
                    other => Expr::Prod(vec![other, next]),
                };
                open = true;
            } else if self.eat(&Tok::Slash) {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                open = false;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.app()
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::LParen | Tok::Num(_) | Tok::Ident(_) | Tok::Ket))
    }

    fn app(&mut self) -> Result<Expr> {
        let head = self.power()?;
        if self.starts_atom() {
            let arg = self.app()?;
            return Ok(Expr::Apply(Box::new(head), Box::new(arg)));
        }
        Ok(head)
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat(&Tok::Caret) {
            let neg = self.eat(&Tok::Minus);
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected an integer exponent");
            };
            self.pos += 1;
            let e: i64 = n.try_into().or_else(|_| self.err("exponent out of range"))?;
            base = Expr::Pow(Box::new(base), if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Ket) => {
                self.pos += 1;
                Ok(Expr::Vacuum)
            }
            Some(Tok::LParen) => {
                if let Some(Tok::Ident(k)) = self.peek2() {
                    if k == "lower" || k == "raise" {
                        let raise = k == "raise";
                        self.pos += 2;
                        return self.op(raise);
                    }
                }
                self.pos += 1;
                let inner = self.tensor()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => self.err("expected an expression"),
            None => self.err("unexpected end of input"),
        }
    }

    fn op(&mut self, raise: bool) -> Result<Expr> {
        let Some(Tok::Ident(lie)) = self.peek().cloned() else {
            return self.err("expected a Lie algebra basis name");
        };
        self.pos += 1;
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err(if raise { "expected a power" } else { "expected a pole order" });
        };
        self.pos += 1;
        let order: u32 = n.try_into().or_else(|_| self.err("order out of range"))?;
        let form = if self.eat(&Tok::LParen) {
            let f = self.tensor()?;
            self.expect(Tok::RParen, "`)` after the form")?;
            Some(Box::new(f))
        } else {
            None
        };
        self.expect(Tok::RParen, "`)` closing the operator")?;
        Ok(Expr::Op { raise, lie, order, form })
    }
}

/// Parse one expression; errors carry 1-based line and column.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let end = src.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, end };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let e = p.tensor()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
