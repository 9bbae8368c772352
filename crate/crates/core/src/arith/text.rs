//! Text form of polynomials.
//!
//! ```text
//! term ::= rational | symbol | term "*" term | term "^" uint
//!        | term "+" term | "-" term | "(" term ")"
//! ```
//!
//! The printer emits terms by descending total degree, ties in ascending
//! symbol order, each as `monomial * coefficient` (the coefficient is
//! omitted when it is 1), e.g. `psi^3 * 1/2` or `L2 * 2 + L3`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, Polynomial, Rational, Symbol};
use crate::error::{Error, Result};

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, &(s, e)) in self.factors().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.factors().cmp(b.factors())));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write_rational(f, &magnitude)?;
            } else {
                write!(f, "{m}")?;
                if !magnitude.is_one() {
                    f.write_str(" * ")?;
                    write_rational(f, &magnitude)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::PolySyntax { offset: self.pos, message: message.to_string() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc += &self.product()?;
            } else if self.eat(b'-') {
                acc -= &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::PolySyntax { offset: start, message: "expected an unsigned exponent".into() })?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
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
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let numer: BigInt = self.digits().parse().expect("digits");
                // `p/q` is a single rational literal; `/` is not a general operator.
                let save = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        self.pos = save;
                        return Err(Error::PolySyntax { offset: at, message: "expected a denominator".into() });
                    }
                    let denom: BigInt = d.parse().expect("digits");
                    if denom == BigInt::from(0) {
                        return Err(Error::PolySyntax { offset: at, message: "zero denominator".into() });
                    }
                    return Ok(Polynomial::constant(Rational::new(numer, denom)));
                }
                Ok(Polynomial::constant(Rational::from_integer(numer)))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let sym: Symbol = name
                    .parse()
                    .map_err(|_| Error::PolySyntax { offset: start, message: format!("unknown symbol `{name}`") })?;
                Ok(Polynomial::symbol(sym))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
