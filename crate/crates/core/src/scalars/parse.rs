//! Infix expression reader shared by scalar and noncommutative polynomial syntax.
//!
//! Grammar: integers, identifiers, `+ - * / ^ ( )`; `^` binds tightest and takes an
//! integer exponent. What identifiers mean is up to the [`ExprValue`] implementation.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::ring::ParamRing;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), start + 1));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i + 1));
            i += 1;
        } else {
            return Err(Error::Syntax {
                col: i + 1,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Values an expression can evaluate to.
pub trait ExprValue: Sized {
    fn from_int(v: BigInt) -> Result<Self>;
    fn from_ident(name: &str) -> Result<Self>;
    fn add(self, other: Self) -> Result<Self>;
    fn sub(self, other: Self) -> Result<Self>;
    fn mul(self, other: Self) -> Result<Self>;
    fn div(self, other: Self) -> Result<Self>;
    fn neg(self) -> Result<Self>;
    fn pow(self, e: i64) -> Result<Self>;
}

struct Parser<'a, V> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    make: &'a dyn Fn(&str) -> Result<V>,
}

impl<V: ExprValue> Parser<'_, V> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            col: self.col(),
            msg: msg.into(),
        })
    }

    fn at(&self, e: Error) -> Error {
        match e {
            Error::Syntax { .. } => e,
            other => Error::Syntax {
                col: self.col(),
                msg: other.to_string(),
            },
        }
    }

    fn expr(&mut self) -> Result<V> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(rhs) } else { acc.sub(rhs) }.map_err(|e| self.at(e))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<V> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' { acc.mul(rhs) } else { acc.div(rhs) }.map_err(|e| self.at(e))?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<V> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                v.neg()
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<V> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let mut sign = 1i64;
            if let Some(Tok::Op('-')) = self.peek() {
                sign = -1;
                self.pos += 1;
            }
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    let e: i64 = v.try_into().map_err(|_| Error::Syntax {
                        col: self.col(),
                        msg: "exponent too large".into(),
                    })?;
                    base.pow(sign * e).map_err(|e| self.at(e))
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<V> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                V::from_int(v)
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.pos += 1;
                (self.make)(&name).map_err(|e| Error::Syntax {
                    col,
                    msg: e.to_string(),
                })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses `src` with `ident` resolving identifiers.
pub fn parse_expr<V: ExprValue>(src: &str, ident: &dyn Fn(&str) -> Result<V>) -> Result<V> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
        make: ident,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// All identifiers occurring in an expression, in order of first appearance.
pub fn identifiers(src: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for (t, _) in tokenize(src)? {
        if let Tok::Ident(s) = t {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

impl ExprValue for Scalar {
    fn from_int(v: BigInt) -> Result<Self> {
        Ok(Scalar::from_rational(BigRational::from_integer(v)))
    }
    fn from_ident(_name: &str) -> Result<Self> {
        unreachable!("identifiers are resolved by the caller")
    }
    fn add(self, other: Self) -> Result<Self> {
        Ok(&self + &other)
    }
    fn sub(self, other: Self) -> Result<Self> {
        Ok(&self - &other)
    }
    fn mul(self, other: Self) -> Result<Self> {
        Ok(&self * &other)
    }
    fn div(self, other: Self) -> Result<Self> {
        self.checked_div(&other)
    }
    fn neg(self) -> Result<Self> {
        Ok(-self)
    }
    fn pow(self, e: i64) -> Result<Self> {
        Scalar::pow(&self, e as i32)
    }
}

/// Parses a scalar expression over `ring`. `omega` is accepted only when the ring has ω.
pub fn parse_scalar(src: &str, ring: &ParamRing) -> Result<Scalar> {
    let resolve = |name: &str| -> Result<Scalar> {
        if name == "omega" {
            if ring.has_omega() {
                return Ok(Scalar::from_coeff(Coeff::omega()));
            }
            return Err(Error::Parse("`omega` used but the field is Q".into()));
        }
        Scalar::named(ring, name)
    };
    parse_expr(src, &resolve)
}
