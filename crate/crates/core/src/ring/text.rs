//! Canonical text form of ring elements.
//!
//! ```text
//! elem    := "0" | ["-"] term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := integer | gen ["^" integer]
//! gen     := "L" | "c[" model "," degree "]"
//! model   := [A-Za-z0-9_.:-]+
//! ```
//!
//! Serialization writes terms in descending monomial order, generators inside
//! a monomial in descending order, the coefficient first and only when it is
//! not `±1`. Examples: `L^2 - L`, `c[m,2] + c[m,1]*L`, `-2*c[u,1] + 3`.
//! Parsing accepts any term order and repeated factors and canonicalizes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use super::{Generator, Monomial, RingElem};

/// Characters allowed in a model identifier.
pub(crate) fn is_model_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | ':' | '-')
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Lefschetz => f.write_str("L"),
            Generator::SymPow { model, degree } => write!(f, "c[{model},{degree}]"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.factors().iter().rev().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse ring element at byte {pos}: {msg}")]
pub struct ParseRingError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseRingError> {
        Err(ParseRingError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseRingError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseRingError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(&self.src[start..self.pos])
    }

    fn small(&mut self) -> Result<u32, ParseRingError> {
        let s = self.digits()?;
        s.parse().or_else(|_| self.err("exponent out of range"))
    }

    fn factor(&mut self) -> Result<RingElem, ParseRingError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits()?;
                Ok(RingElem::constant(s.parse::<BigInt>().expect("digits")))
            }
            Some('L') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(RingElem::lefschetz_pow(e))
            }
            Some('c') => {
                self.pos += 1;
                self.expect('[')?;
                self.skip_ws();
                let start = self.pos;
                while self.peek().is_some_and(is_model_char) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected model identifier");
                }
                let model = &self.src[start..self.pos];
                self.expect(',')?;
                let degree = self.small()?;
                if degree == 0 {
                    return self.err("symmetric-power degree must be positive");
                }
                self.expect(']')?;
                let e = self.exponent()?;
                let g = Generator::sym_pow(model, degree).expect("positive degree");
                Ok(RingElem::term(1, Monomial::from_generator(g, e)))
            }
            _ => self.err("expected integer, 'L' or 'c['"),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseRingError> {
        if self.eat('^') {
            self.small()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<RingElem, ParseRingError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn elem(&mut self) -> Result<RingElem, ParseRingError> {
        let mut acc = RingElem::zero();
        let mut neg = self.eat('-');
        loop {
            let t = self.term()?;
            if neg {
                acc -= &t;
            } else {
                acc += &t;
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(acc)
    }
}

impl FromStr for RingElem {
    type Err = ParseRingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s, pos: 0 }.elem()
    }
}
