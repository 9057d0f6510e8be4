//! Recursive-descent parser for the polynomial input language.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nonneg-int)*
//! atom   := integer | var | '(' expr ')' | '-' factor
//! ```
//!
//! Whitespace is ignored between tokens. Integers are reduced modulo p.

use std::sync::Arc;

use super::poly::{Polynomial, RingSpec};
use crate::error::{Error, Result};

pub fn parse_poly(src: &str, ring: &Arc<RingSpec>) -> Result<Polynomial> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<RingSpec>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let k: u64 = digits.parse().map_err(|_| Error::ExponentOverflow)?;
            if k > u16::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
            base = base.pow(k)?;
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.characteristic();
                let mut value = 0u64;
                for d in self.digits().bytes() {
                    value = (value * 10 + (d - b'0') as u64) % p;
                }
                Ok(self.ring.constant(value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}
