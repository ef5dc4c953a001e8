//! Text form of polynomials: `c*z[i,j]^e*...` terms joined by `+` / `-`.
//!
//! [`Polynomial::render`] produces this grammar and [`parse_polynomial`]
//! reads it back; reports and golden fixtures round-trip through it.

use super::{Monomial, Polynomial, Ring, Var};
use crate::error::Error;
use crate::field::{Field, Scalar};

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", b as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::BadPolynomialText(format!("{msg} at byte {} of {:?}", self.pos, self.text))
    }

    fn uint(&mut self) -> Result<u64, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .map_err(|_| self.err("number out of range"))
    }
}

/// Parses the term grammar into a polynomial over `ring` and `field`.
pub fn parse_polynomial(text: &str, ring: &Ring, field: Field) -> Result<Polynomial, Error> {
    let mut cur = Cursor::new(text);
    let mut poly = Polynomial::zero(ring, field);
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty input"));
    }
    let mut negative = cur.eat(b'-');
    loop {
        cur.skip_ws();
        let (m, c) = parse_term(&mut cur, ring, field)?;
        poly.add_term(m, if negative { field.neg(&c) } else { c });
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) => return Err(cur.err("expected '+', '-', or end of input")),
        }
    }
    Ok(poly)
}

fn parse_term(cur: &mut Cursor, ring: &Ring, field: Field) -> Result<(Monomial, Scalar), Error> {
    let mut coeff = field.one();
    let mut mono = Monomial::unit(ring.len());
    let mut first = true;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = cur.uint()?;
                let mut c = field.embed(num as i64);
                if cur.eat(b'/') {
                    let den = cur.uint()?;
                    c = field.div(&c, &field.embed(den as i64))?;
                }
                coeff = field.mul(&coeff, &c);
            }
            Some(b'z') | Some(b't') => {
                let var = parse_var(cur)?;
                let idx = ring
                    .index_of(var)
                    .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
                let mut exp = 1u64;
                if cur.eat(b'^') {
                    exp = cur.uint()?;
                }
                mono.0[idx] = mono.0[idx]
                    .checked_add(u16::try_from(exp).map_err(|_| cur.err("exponent too large"))?)
                    .ok_or_else(|| cur.err("exponent too large"))?;
            }
            _ if first => return Err(cur.err("expected a coefficient or a variable")),
            _ => return Err(cur.err("expected a factor after '*'")),
        }
        first = false;
        cur.skip_ws();
        if !cur.eat(b'*') {
            return Ok((mono, coeff));
        }
    }
}

fn parse_var(cur: &mut Cursor) -> Result<Var, Error> {
    if cur.eat(b'z') {
        cur.expect(b'[')?;
        let i = cur.uint()?;
        cur.expect(b',')?;
        let j = cur.uint()?;
        cur.expect(b']')?;
        Ok(Var::Entry(i as u16, j as u16))
    } else if cur.eat(b't') {
        let k = cur.uint()?;
        Ok(Var::Aux(k as u16))
    } else {
        Err(cur.err("expected a variable"))
    }
}
