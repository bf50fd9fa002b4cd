//! Parser for the canonical polynomial text form, used by golden files,
//! fixtures and group description files.
//!
//! Grammar (whitespace-insensitive): expressions over `+ - * / ^ ( )`,
//! integer literals, variables `x1, x2, ...` and the session root of unity
//! `z`. Division is only allowed by a constant.

use crate::cyclotomic::CycScalar;
use crate::error::Error;
use crate::poly::MPoly;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    conductor: u32,
    src: &'a str,
}

pub fn parse_poly(src: &str, nvars: usize, conductor: u32) -> Result<MPoly, Error> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        nvars,
        conductor,
        src,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse_scalar(src: &str, conductor: u32) -> Result<CycScalar, Error> {
    let p = parse_poly(src, 1, conductor)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::Parse(format!("expected a scalar, got `{}`", src)));
    }
    Ok(p.coeff(&crate::poly::Monomial::one(1)))
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at offset {} in `{}`", msg, self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                -&self.term()?
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
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.bump();
                    let d = self.factor()?;
                    if d.degree().unwrap_or(0) > 0 {
                        return Err(self.err("division by a non-constant"));
                    }
                    let c = d.coeff(&crate::poly::Monomial::one(self.nvars));
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&c.inv());
                }
                // implicit products like `3x1` are not in the canonical form
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()? as usize;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some('x') => {
                self.bump();
                let i = self.integer()? as usize;
                if i == 0 || i > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(MPoly::var(self.nvars, self.conductor, i - 1))
            }
            Some('z') => {
                self.bump();
                Ok(MPoly::constant(
                    self.nvars,
                    CycScalar::zeta(self.conductor),
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.big_integer()?;
                Ok(MPoly::constant(
                    self.nvars,
                    CycScalar::from_rat(
                        self.conductor,
                        num::BigRational::from_integer(n),
                    ),
                ))
            }
            Some('-') => {
                self.bump();
                Ok(-&self.atom()?)
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn integer(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer overflow"))
    }

    fn big_integer(&mut self) -> Result<num::BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_text() {
        let samples = [
            "0",
            "1",
            "-7",
            "x1^7 - 7*x1^5*x2^2",
            "3*x1^7 - 7*x1^4*x2^3",
            "x1^2 + 1/4*x2",
            "(1 + 2*z)/3*x1 - x2^2",
        ];
        for s in samples {
            let p = parse_poly(s, 2, 12).unwrap();
            let q = parse_poly(&p.to_text(), 2, 12).unwrap();
            assert_eq!(p, q, "round trip failed for `{}`", s);
        }
    }

    #[test]
    fn scalar_parsing() {
        let s = parse_scalar("(1 + 2*z)/3", 12).unwrap();
        assert_eq!(s.to_text(), "(1 + 2*z)/3");
        assert!(parse_scalar("x1", 12).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_poly("x3", 2, 12).is_err());
        assert!(parse_poly("x1 +", 2, 12).is_err());
        assert!(parse_poly("1/0", 2, 12).is_err());
        assert!(parse_poly("x1/x2", 2, 12).is_err());
    }
}
