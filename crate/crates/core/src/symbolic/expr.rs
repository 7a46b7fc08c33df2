//! Radical expressions: rationals, named parameters, field operations,
//! `root(e, k)` and `pow(e, p/q)`.
//!
//! The parser only produces integer literals; a leading minus directly on
//! a literal folds into a negative literal. Printing then parsing any parsed
//! expression gives it back unchanged.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::numeric::Cx;
use crate::linalg::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Q),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Principal `k`-th root.
    Root(Box<Expr>, Box<Expr>),
    /// Principal power with rational exponent.
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound parameter `{0}`")]
    Unbound(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent or root index is not an exact rational")]
    InexactExponent,
    #[error("root index must be a positive integer")]
    BadRootIndex,
    #[error("negative power of zero")]
    ZeroToNegative,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Parse { pos: i, msg: format!("unexpected `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn fail<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(match self.factor()? {
                Expr::Num(q) if !q.is_negative() && !q.is_zero() => Expr::Num(-q),
                e => Expr::Neg(Box::new(e)),
            });
        }
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Num(Q::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "root" || name == "pow" {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(',')?;
                    let k = self.expr()?;
                    self.expect(')')?;
                    let (a, k) = (Box::new(a), Box::new(k));
                    Ok(if name == "root" { Expr::Root(a, k) } else { Expr::Pow(a, k) })
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.fail("expected a number, name or `(`"),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0, end: s.len() };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return p.fail("trailing input");
        }
        Ok(e)
    }
}

/// Parse, panicking on malformed input. For static tables.
pub fn ex(s: &str) -> Expr {
    s.parse().unwrap_or_else(|e| panic!("bad expression `{s}`: {e}"))
}

impl Expr {
    pub fn num(q: Q) -> Expr {
        Expr::Num(q)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(q) if q.is_negative() => 3,
            Expr::Num(q) if !q.is_integer() => 2,
            _ => 4,
        }
    }

    /// Parameter names in order of first appearance.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Root(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Exact value; fails on roots and non-integer powers.
    pub fn eval_q(&self, env: &HashMap<String, Q>) -> Result<Q, ExprError> {
        Ok(match self {
            Expr::Num(q) => q.clone(),
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| ExprError::Unbound(v.clone()))?,
            Expr::Neg(a) => -a.eval_q(env)?,
            Expr::Add(a, b) => a.eval_q(env)? + b.eval_q(env)?,
            Expr::Sub(a, b) => a.eval_q(env)? - b.eval_q(env)?,
            Expr::Mul(a, b) => a.eval_q(env)? * b.eval_q(env)?,
            Expr::Div(a, b) => {
                let d = b.eval_q(env)?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.eval_q(env)? / d
            }
            Expr::Root(..) => return Err(ExprError::InexactExponent),
            Expr::Pow(a, p) => {
                let p = p.eval_q(env)?;
                if !p.is_integer() {
                    return Err(ExprError::InexactExponent);
                }
                let base = a.eval_q(env)?;
                let e: i32 = p.to_integer().try_into().map_err(|_| ExprError::InexactExponent)?;
                if base.is_zero() && e < 0 {
                    return Err(ExprError::ZeroToNegative);
                }
                num_traits::pow::Pow::pow(&base, e)
            }
        })
    }

    /// Principal-branch complex value. Names bound in `cenv` take precedence
    /// over `qenv`; root indices and exponents are evaluated exactly in `qenv`.
    pub fn eval_cx(&self, qenv: &HashMap<String, Q>, cenv: &HashMap<String, Cx>, prec: u32) -> Result<Cx, ExprError> {
        let go = |e: &Expr| e.eval_cx(qenv, cenv, prec);
        Ok(match self {
            Expr::Num(q) => Cx::from_q(q, prec),
            Expr::Var(v) => match cenv.get(v) {
                Some(c) => c.clone(),
                None => Cx::from_q(qenv.get(v).ok_or_else(|| ExprError::Unbound(v.clone()))?, prec),
            },
            Expr::Neg(a) => go(a)?.neg(),
            Expr::Add(a, b) => go(a)?.add(&go(b)?),
            Expr::Sub(a, b) => go(a)?.sub(&go(b)?),
            Expr::Mul(a, b) => go(a)?.mul(&go(b)?),
            Expr::Div(a, b) => go(a)?.div(&go(b)?).ok_or(ExprError::DivisionByZero)?,
            Expr::Root(a, k) => {
                let k = k.eval_q(qenv).map_err(|_| ExprError::InexactExponent)?;
                if !k.is_integer() || !k.is_positive() {
                    return Err(ExprError::BadRootIndex);
                }
                go(a)?.pow_q(&(Q::one() / k)).ok_or(ExprError::ZeroToNegative)?
            }
            Expr::Pow(a, p) => {
                let p = p.eval_q(qenv).map_err(|_| ExprError::InexactExponent)?;
                go(a)?.pow_q(&p).ok_or(ExprError::ZeroToNegative)?
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `need` is the minimum precedence a child must have to skip parentheses.
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, need: u8) -> fmt::Result {
            if e.prec() < need {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(q) => f.write_str(&fmt_q(q)),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => {
                f.write_str("-")?;
                child(f, a, 3)
            }
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                f.write_str(" + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                f.write_str(" - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                f.write_str("*")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                f.write_str("/")?;
                child(f, b, 3)
            }
            Expr::Root(a, k) => write!(f, "root({a}, {k})"),
            Expr::Pow(a, p) => write!(f, "pow({a}, {p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    fn env(pairs: &[(&str, Q)]) -> HashMap<String, Q> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn precedence_and_round_trip() {
        for s in [
            "a - b - c",
            "a - (b - c)",
            "a/(b*c)",
            "-a*b",
            "-(a + b)",
            "a - -1",
            "2*-3",
            "pow((a2 - (n - 1)*a1)/a3, 1/(n - 3))",
            "-a1*root(a4, n)/(a4*(a2 - (n - 1)*a1))",
            "--x",
        ] {
            let e = ex(s);
            let printed = e.to_string();
            assert_eq!(ex(&printed), e, "{s} -> {printed}");
        }
        assert_eq!(ex("a-b-c").to_string(), "a - b - c");
        assert_eq!(ex("a-(b-c)").to_string(), "a - (b - c)");
    }

    #[test]
    fn exact_evaluation() {
        let e = ex("(a1 - a2)/((n - 2)*a3)");
        let v = e.eval_q(&env(&[("a1", q(5)), ("a2", q(1)), ("a3", q(2)), ("n", q(6))])).unwrap();
        assert_eq!(v, qf(1, 2));
        assert_eq!(ex("1/(a - a)").eval_q(&env(&[("a", q(1))])), Err(ExprError::DivisionByZero));
        assert_eq!(ex("pow(2, 3)").eval_q(&HashMap::new()), Ok(q(8)));
        assert!(matches!(ex("b").eval_q(&HashMap::new()), Err(ExprError::Unbound(_))));
    }

    #[test]
    fn complex_evaluation_uses_principal_branch() {
        let qenv = env(&[("a", q(-4)), ("n", q(3))]);
        let r = ex("root(a, 2)").eval_cx(&qenv, &HashMap::new(), 64).unwrap();
        assert!(r.close_to(0.0, 2.0, 1e-15));
        let c = ex("pow(8, 1/n)").eval_cx(&qenv, &HashMap::new(), 64).unwrap();
        assert!(c.close_to(2.0, 0.0, 1e-15));
        assert_eq!(ex("root(a, 0)").eval_cx(&qenv, &HashMap::new(), 64), Err(ExprError::BadRootIndex));
    }

    #[test]
    fn parse_errors() {
        assert!("a +".parse::<Expr>().is_err());
        assert!("root(a)".parse::<Expr>().is_err());
        assert!("a $ b".parse::<Expr>().is_err());
        assert!("(a".parse::<Expr>().is_err());
    }
}
