//! Recursive-descent parser for ring elements.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor ("*" factor)* ;
//! factor := base ("^" nat)? ;
//! base   := nat | "a" | "u" | "x" | "(" expr ")" | "-" factor ;
//! nat    := digit+ ;
//! ```

use std::sync::Arc;

use crate::algebra::{Degree, FieldCtx, FieldElement, FieldPoly, RtElement, RtPoly};
use crate::error::{Error, Result};
use crate::quotient::{QuotElem, RingCtx};

/// Degree bound for literals parsed without a modulus.
pub const MAX_UNREDUCED_DEGREE: usize = 1 << 12;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldCtx,
    t: usize,
    allow_u: bool,
    modulus: Option<&'a RtPoly>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn constant(&self, c: FieldElement) -> RtPoly {
        RtPoly::new(self.t, vec![RtElement::constant(self.t, c)])
    }

    fn reduce(&self, a: RtPoly) -> Result<RtPoly> {
        match self.modulus {
            Some(m) => self.field.rtpoly_rem(&a, m),
            None => Ok(a),
        }
    }

    fn mul(&self, a: &RtPoly, b: &RtPoly, offset: usize) -> Result<RtPoly> {
        if self.modulus.is_none() {
            let deg = |p: &RtPoly| match p.degree() {
                Degree::Finite(d) => d,
                Degree::MinusInfinity => 0,
            };
            if deg(a) + deg(b) > MAX_UNREDUCED_DEGREE {
                return Err(Error::ExponentOverflow { offset });
            }
        }
        self.reduce(self.field.rtpoly_mul(a, b))
    }

    fn expr(&mut self) -> Result<RtPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if op == b'-' { self.field.rtpoly_neg(&rhs) } else { rhs };
            acc = self.field.rtpoly_add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RtPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = self.mul(&acc, &rhs, at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RtPoly> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits()?;
        let mut e: u64 = 0;
        for d in digits {
            e = e
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d - b'0')))
                .ok_or(Error::ExponentOverflow { offset: at })?;
        }
        self.pow(base, e, at)
    }

    fn pow(&self, base: RtPoly, mut e: u64, at: usize) -> Result<RtPoly> {
        let mut acc = self.constant(FieldElement::ONE);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq, at)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq, at)?;
            }
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Result<&'a [u8]> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a number"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn base(&mut self) -> Result<RtPoly> {
        let at = self.pos;
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'0'..=b'9') => {
                let p = self.field.p() as u64;
                let v = self.digits()?.iter().fold(0u64, |acc, &d| (acc * 10 + u64::from(d - b'0')) % p);
                Ok(self.constant(self.field.from_int(v as i64)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(self.field.rtpoly_neg(&inner))
            }
            Some(b'x') => {
                self.pos += 1;
                self.reduce(RtPoly::new(self.t, vec![RtElement::zero(self.t), RtElement::one(self.t)]))
            }
            Some(b'u') if self.allow_u => {
                self.pos += 1;
                Ok(RtPoly::new(self.t, vec![RtElement::monomial(self.t, FieldElement::ONE, 1)]))
            }
            Some(b'a') if self.field.m() > 1 => {
                self.pos += 1;
                Ok(self.constant(self.field.generator()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let symbol = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Err(Error::UnknownSymbol { symbol, offset: start })
            }
            Some(c) => Err(Error::Syntax { offset: at.max(self.pos), message: format!("unexpected '{}'", c as char) }),
        }
    }

    fn finish(mut self) -> Result<RtPoly> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.syntax("unexpected trailing input"));
        }
        Ok(v)
    }
}

fn parser<'a>(text: &'a str, field: &'a FieldCtx, t: usize, allow_u: bool, modulus: Option<&'a RtPoly>) -> Parser<'a> {
    Parser { src: text.as_bytes(), pos: 0, field, t, allow_u, modulus }
}

/// Parses an element of R^{t,ω}, reducing modulo ω as it goes.
pub fn parse_poly(text: &str, ctx: &Arc<RingCtx>) -> Result<QuotElem> {
    let p = parser(text, ctx.field(), ctx.t(), true, Some(ctx.omega())).finish()?;
    ctx.from_rtpoly(&p)
}

/// Parses a polynomial over R^t without reduction.
pub fn parse_rtpoly(text: &str, field: &FieldCtx, t: usize) -> Result<RtPoly> {
    parser(text, field, t, true, None).finish()
}

/// Parses a polynomial over F_{p^m}; `u` is not a symbol here.
pub fn parse_field_poly(text: &str, field: &FieldCtx) -> Result<FieldPoly> {
    Ok(parser(text, field, 1, false, None).finish()?.level(0))
}

/// Parses a constant of F_{p^m}.
pub fn parse_field_element(text: &str, field: &FieldCtx) -> Result<FieldElement> {
    let p = parse_field_poly(text, field)?;
    match p.degree() {
        Degree::MinusInfinity => Ok(FieldElement::ZERO),
        Degree::Finite(0) => Ok(p.coeff(0)),
        Degree::Finite(_) => Err(Error::Syntax { offset: 0, message: "expected a field element".into() }),
    }
}

/// Semicolon-separated list of ring elements.
pub fn parse_list(text: &str, ctx: &Arc<RingCtx>) -> Result<Vec<QuotElem>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let shift = |e: Error| match e {
            Error::Syntax { offset: o, message } => Error::Syntax { offset: o + offset, message },
            Error::UnknownSymbol { symbol, offset: o } => Error::UnknownSymbol { symbol, offset: o + offset },
            Error::ExponentOverflow { offset: o } => Error::ExponentOverflow { offset: o + offset },
            e => e,
        };
        if !part.trim().is_empty() {
            out.push(parse_poly(part, ctx).map_err(shift)?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}
