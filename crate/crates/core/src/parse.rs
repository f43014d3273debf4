//! Parser for polynomial expressions in `x` and `y`.
//!
//! Accepts integer, decimal and rational coefficients, `+ - * / ^`,
//! parentheses and implicit multiplication (`3/2 x y`, `x^2y^2`).
//! Division is allowed only by nonzero constants.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{BiPoly, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                out.push((start, Tok::Num(parse_decimal(&src[start..i], start)?)));
            }
            'x' | 'X' => {
                out.push((i, Tok::X));
                i += 1;
            }
            'y' | 'Y' => {
                out.push((i, Tok::Y));
                i += 1;
            }
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' if bytes.get(i + 1) == Some(&b'*') => {
                out.push((i, Tok::Caret));
                i += 2;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            _ => return Err(err(i, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

fn parse_decimal(s: &str, pos: usize) -> Result<Rational, ParseError> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(err(pos, format!("malformed number '{s}'")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits
        .parse()
        .map_err(|_| err(pos, format!("malformed number '{s}'")))?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(numer, denom))
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

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.unary()?;
                    acc = acc.scale(&constant_inverse(&d, at)?);
                }
                Some(Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let at = self.offset();
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(e))) if e.is_integer() && *e >= Rational::zero() => {
                    let e: u32 = e
                        .to_integer()
                        .try_into()
                        .map_err(|_| err(at, "exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(err(at, "exponent must be a non-negative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        let at = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(err(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(q) => Ok(BiPoly::constant(q)),
            Tok::X => Ok(BiPoly::x()),
            Tok::Y => Ok(BiPoly::y()),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(err(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(err(at, format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_inverse(d: &BiPoly, at: usize) -> Result<Rational, ParseError> {
    match d.degree() {
        Some(0) => Ok(d.coeff(crate::algebra::Monomial::ONE).recip()),
        None => Err(err(at, "division by zero")),
        Some(_) => Err(err(at, "division by a non-constant polynomial")),
    }
}

/// Parses a polynomial in `x` and `y` with rational coefficients.
pub fn parse_polynomial(src: &str) -> Result<BiPoly, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a 1-form given as `"P, Q"`, meaning `P dx + Q dy`.
pub fn parse_one_form(src: &str) -> Result<crate::forms::OneForm, ParseError> {
    let Some((p, q)) = src.split_once(',') else {
        return Err(err(0, "expected 'P,Q' for the form P dx + Q dy"));
    };
    let p_poly = parse_polynomial(p)?;
    let q_poly = parse_polynomial(q).map_err(|e| ParseError {
        position: e.position + p.len() + 1,
        message: e.message,
    })?;
    Ok(crate::forms::OneForm::new(p_poly, q_poly))
}
