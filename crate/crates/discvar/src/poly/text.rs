//! Paper-style text form of polynomials and a parser for it.
//!
//! Printing follows the listings' ASCII convention:
//! `x12^2*x23 -x12*x13*x22 +2*x13^2*x23 +(1/2)*x33^3`. The parser accepts
//! general +,-,*,/,^ expressions over the context variables, integer
//! literals and coefficient-field symbols, so everything printed here (and
//! every system transcribed from the listings) parses back.

use std::fmt;

use thiserror::Error;

use super::{MonomialOrder, MultiPoly, VarContext};
use crate::field::{Field, Rat};

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        struct Coeff<'a, F: Field>(&'a F);
        impl<F: Field> fmt::Display for Coeff<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_coeff(f)
            }
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let s = format!("{}", Coeff(c));
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => {
                    // Parenthesized coefficients hide their sign; leave them as-is.
                    (false, s)
                }
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " -")?;
            } else {
                write!(f, " +")?;
            }
            let mut wrote = false;
            if mag != "1" || m.is_one() {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ctx().name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("division by a non-constant polynomial")]
    NonConstantDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    BadExponent,
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a VarContext,
    order: MonomialOrder,
    _marker: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn new(src: &'a str, ctx: &'a VarContext, order: MonomialOrder) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            ctx,
            order,
            _marker: std::marker::PhantomData,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                self.term()?.neg()
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.bump();
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(ParseError::DivisionByZero);
                    }
                    if d.total_degree().unwrap_or(0) != 0 {
                        return Err(ParseError::NonConstantDivisor);
                    }
                    let c = d.leading_coeff().clone();
                    let inv = F::one().div_ref(&c);
                    acc = acc.scale(&inv);
                }
                // Implicit products like `2x` do not occur in the listings;
                // juxtaposed factors still need `*`.
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.uint()?;
            if e > 64 {
                return Err(ParseError::BadExponent);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<F>, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                match self.bump() {
                    Some(')') => Ok(e),
                    Some(c) => Err(ParseError::UnexpectedChar(c, self.pos - 1)),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                Ok(MultiPoly::constant(
                    self.ctx,
                    self.order,
                    F::from_rat(&Rat::from_integer(n)),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident();
                if let Some(idx) = self.ctx.index_of(&name) {
                    Ok(MultiPoly::var(self.ctx, self.order, idx))
                } else if let Some(v) = F::parse_symbol(&name) {
                    Ok(MultiPoly::constant(self.ctx, self.order, v))
                } else {
                    Err(ParseError::UnknownSymbol(name))
                }
            }
            Some(c) => Err(ParseError::UnexpectedChar(c, self.pos)),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos] as char;
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.src.get(self.pos) {
                Some(&b) => Err(ParseError::UnexpectedChar(b as char, self.pos)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.digits()?.parse().map_err(|_| ParseError::BadExponent)
    }

    fn bigint(&mut self) -> Result<num_bigint::BigInt, ParseError> {
        self.digits()?.parse().map_err(|_| ParseError::BadExponent)
    }
}

/// Parse one polynomial over a known context.
pub fn parse_poly<F: Field>(
    src: &str,
    ctx: &VarContext,
    order: MonomialOrder,
) -> Result<MultiPoly<F>, ParseError> {
    let mut p = Parser::new(src, ctx, order);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError::UnexpectedChar(p.src[p.pos] as char, p.pos));
    }
    Ok(e)
}

/// Parse a `{p1, p2, ...}` block (the listings' shape) into polynomials.
/// The braces are optional; commas separate members.
pub fn parse_system_text<F: Field>(
    src: &str,
    ctx: &VarContext,
    order: MonomialOrder,
) -> Result<Vec<MultiPoly<F>>, ParseError> {
    let trimmed = src.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(trimmed);
    inner
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| parse_poly(s, ctx, order))
        .collect()
}
