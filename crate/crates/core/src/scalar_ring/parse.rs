//! Parser for scalars written in the report string form, e.g.
//! `q^-1 + q*p` or `(q^2 + 1)/(q - 1)*p`.
//!
//! Grammar: sums and differences of products and quotients of factors,
//! where a factor is an integer, `q`, `p` (π), or a parenthesized
//! expression, optionally raised to an integer power with `^`.

use num_bigint::BigInt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub(crate) struct Parser<'a> {
    pub s: &'a [u8],
    pub pos: usize,
}

impl<'a> Parser<'a> {
    pub fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let inv = d.try_inv().ok_or_else(|| self.err("division by a non-unit"))?;
                    acc = acc.mul(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
            if e < 0 && base.try_inv().is_none() {
                return Err(self.err("negative power of a non-unit"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'p') => {
                self.pos += 1;
                Ok(Scalar::pi())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_ratfn(super::RationalFn::from_bigint(n)))
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

/// Parse a signed sum of terms `coef atom atom ...`, where `coef` is an
/// optional parenthesized scalar or bare integer and atoms are recognized by
/// `atom` (which returns `None` when the next token is not an atom).
pub(crate) fn parse_terms<T>(
    src: &str,
    mut atom: impl FnMut(&mut Parser<'_>) -> Result<Option<T>>,
) -> Result<Vec<(Scalar, Vec<T>)>> {
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    let mut sign = 1i64;
    if p.peek() == Some(b'-') {
        p.pos += 1;
        sign = -1;
    } else if p.peek() == Some(b'+') {
        p.pos += 1;
    }
    loop {
        let mut coef = Scalar::from_int(sign);
        let mut had_coef = false;
        match p.peek() {
            Some(b'(') => {
                p.pos += 1;
                coef = coef.mul(&p.expr()?);
                if p.peek() != Some(b')') {
                    return Err(p.err("expected ')'"));
                }
                p.pos += 1;
                had_coef = true;
            }
            Some(c) if c.is_ascii_digit() => {
                let n = p.integer()?;
                coef = coef.mul(&Scalar::from_ratfn(super::RationalFn::from_bigint(n)));
                had_coef = true;
            }
            _ => {}
        }
        let mut atoms = Vec::new();
        loop {
            p.skip_ws();
            match atom(&mut p)? {
                Some(a) => atoms.push(a),
                None => break,
            }
        }
        if atoms.is_empty() && !had_coef {
            return Err(p.err("empty term"));
        }
        out.push((coef, atoms));
        match p.peek() {
            None => return Ok(out),
            Some(b'+') => {
                p.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                p.pos += 1;
                sign = -1;
            }
            Some(_) => return Err(p.err("unexpected character")),
        }
    }
}

impl<'a> Parser<'a> {
    /// Consume `kw(` followed by comma-separated integers and `)`.
    pub fn call_args(&mut self, kw: &str) -> Result<Option<Vec<i64>>> {
        self.skip_ws();
        let kb = kw.as_bytes();
        if !self.s[self.pos..].starts_with(kb) {
            return Ok(None);
        }
        self.pos += kb.len();
        if self.peek() != Some(b'(') {
            return Err(self.err("expected '('"));
        }
        self.pos += 1;
        let mut args = Vec::new();
        loop {
            let v = self.integer()?;
            args.push(i64::try_from(v).map_err(|_| self.err("argument out of range"))?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(Some(args));
                }
                _ => return Err(self.err("expected ',' or ')'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_display() {
        let samples = ["q^-1 + q*p", "p", "3/2*q^2 - p", "(q^2 + 1)/(q - 1)*p", "-q"];
        for s in samples {
            let v = parse_scalar(s).unwrap();
            let again = parse_scalar(&v.to_string()).unwrap();
            assert_eq!(v, again, "{s}");
        }
        assert_eq!(parse_scalar("q^-1 + q*p").unwrap().to_string(), "q^-1 + q*p");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/(1+p)").is_err());
    }
}
