//! Text form of free-algebra elements, e.g. `[l11^0, l11^1]`,
//! `l12^0*l12^0`, `2*hbar*l11^-1 - {l12^0, l21^0}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::{RationalFunction, Var};

use super::{FreeElement, ModeGenerator};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseElementError {
    pub message: String,
    pub offset: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseElementError> {
        Err(ParseElementError {
            message: message.into(),
            offset: self.pos,
        })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseElementError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseElementError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn element(&mut self) -> Result<FreeElement, ParseElementError> {
        let mut acc = if self.eat(b'-') {
            self.product()?.scaled(&RationalFunction::from_int(-1))
        } else {
            self.product()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.plus(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.minus(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<FreeElement, ParseElementError> {
        let mut acc = self.atom()?;
        while self.eat(b'*') {
            acc = acc.times(&self.atom()?);
        }
        Ok(acc)
    }

    fn bracket(&mut self, close: u8) -> Result<(FreeElement, FreeElement), ParseElementError> {
        let a = self.element()?;
        self.expect(b',')?;
        let b = self.element()?;
        self.expect(close)?;
        Ok((a, b))
    }

    fn atom(&mut self) -> Result<FreeElement, ParseElementError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.element()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let (a, b) = self.bracket(b']')?;
                Ok(a.times(&b).minus(&b.times(&a)))
            }
            Some(b'{') => {
                self.pos += 1;
                let (a, b) = self.bracket(b'}')?;
                Ok(a.times(&b).plus(&b.times(&a)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let q = if self.eat(b'/') {
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(n)
                };
                Ok(FreeElement::scalar(RationalFunction::constant(q)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let w = self.word();
                match w.as_str() {
                    "hbar" => Ok(FreeElement::scalar(RationalFunction::var(Var::H))),
                    "c" => Ok(FreeElement::scalar(RationalFunction::var(Var::C))),
                    _ => {
                        let b = w.as_bytes();
                        let valid = b.len() == 3
                            && b[0] == b'l'
                            && matches!(b[1], b'1' | b'2')
                            && matches!(b[2], b'1' | b'2');
                        if !valid {
                            self.pos = start;
                            return self.err(format!("unknown name '{w}'"));
                        }
                        if !self.eat(b'^') {
                            return self.err("expected '^' and a mode");
                        }
                        let neg = self.eat(b'-');
                        let k = self.number()?;
                        let k: i64 = k.try_into().map_err(|_| ParseElementError {
                            message: "mode out of range".into(),
                            offset: self.pos,
                        })?;
                        let k = if neg { -k } else { k };
                        Ok(FreeElement::generator(ModeGenerator::new(b[1] - b'0', b[2] - b'0', k)))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_free_element(text: &str) -> Result<FreeElement, ParseElementError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.element()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}
