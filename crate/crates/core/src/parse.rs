//! Recursive-descent parser for polynomial literals.
//!
//! ```text
//! expr     := term (('+' | '-') term)*      -- a leading '-' is allowed
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! rational := '-'? nat ('/' posnat)?
//! ```
//!
//! Whitespace between tokens is ignored.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result};
use crate::poly::{AlgebraContext, Polynomial};
use crate::rational::Rational;

pub fn parse_polynomial(text: &str, ctx: &Arc<AlgebraContext>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty polynomial literal"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected {:?}", p.peek_char())));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<AlgebraContext>,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or(char::REPLACEMENT_CHARACTER)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut acc = if self.peek() == Some(b'-') && !self.next_is_digit() {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Whether the '-' at the cursor starts a negative rational literal.
    fn next_is_digit(&self) -> bool {
        let mut i = self.pos + 1;
        while matches!(self.src.get(i), Some(b) if b.is_ascii_whitespace()) {
            i += 1;
        }
        matches!(self.src.get(i), Some(b) if b.is_ascii_digit())
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                return Err(self.error("exponent must be a non-negative integer"));
            }
            let start = self.pos;
            let digits = self.digits();
            let e: u32 = digits.parse().map_err(|_| Error::Parse(ParseError {
                offset: start,
                message: format!("exponent {digits} out of range"),
            }))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') | Some(b'0'..=b'9') => self.rational(),
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Polynomial::var(self.ctx, name)
            }
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error(format!("unexpected {:?}", self.peek_char()))),
        }
    }

    fn rational(&mut self) -> Result<Polynomial> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            return Err(self.error("expected a number"));
        }
        let num: BigInt = self.digits().parse().expect("digits");
        let mut den = BigInt::from(1);
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                return Err(self.error("expected a positive denominator"));
            }
            den = self.digits().parse().expect("digits");
            if den == BigInt::from(0) {
                return Err(Error::Parse(ParseError {
                    offset: start,
                    message: "zero denominator".into(),
                }));
            }
        }
        let num = if negative { -num } else { num };
        let c = Rational::from_bigints(num, den).expect("nonzero denominator");
        Ok(Polynomial::constant(self.ctx, c))
    }
}
