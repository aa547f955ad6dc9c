//! Parser for the canonical text form of coefficients and `phi`-Laurent
//! polynomials, e.g. `(t0^2 - t1*t2) / (t0 - t1)*phi^-2 + 1/12`.
//!
//! Grammar (usual precedence, `^` binds tightest and takes a signed integer):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 't0' | 't1' | 't2' | 'phi' | '(' expr ')'
//! ```
//!
//! Division and negative powers are only allowed when the divisor is a single
//! `phi` power, since the quotient must stay a Laurent polynomial.

use num_bigint::BigInt;

use crate::exactring::{BigRat, TPoly, TRat};
use crate::phicalc::PhiElem;
use crate::{Error, Result};

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: i64 = 64;
const MAX_DEGREE: i64 = 256;

/// Parses a Laurent polynomial in `phi` with coefficients in `Q(t0,t1,t2)`.
pub fn parse_phi_elem(src: &str) -> Result<PhiElem> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a rational function in `t0, t1, t2` (no `phi`).
pub fn parse_trat(src: &str) -> Result<TRat> {
    let e = parse_phi_elem(src)?;
    match e.max_exp() {
        None => Ok(TRat::zero()),
        Some(0) if e.min_exp() == Some(0) => Ok(e.coeff(0)),
        _ => Err(Error::Parse { pos: 0, msg: "expression depends on phi".into() }),
    }
}

/// Parses a polynomial in `t0, t1, t2`.
pub fn parse_tpoly(src: &str) -> Result<TPoly> {
    let r = parse_trat(src)?;
    if !r.is_polynomial() {
        return Err(Error::Parse { pos: 0, msg: "expression is not a polynomial".into() });
    }
    Ok(r.num().clone())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<PhiElem> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<PhiElem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let start = self.pos;
                let rhs = self.unary()?;
                acc = &acc * &rhs;
                self.check_size(&acc, start)?;
            } else if self.eat(b'/') {
                let start = self.pos;
                let rhs = self.unary()?;
                acc = divide(&acc, &rhs).map_err(|msg| Error::Parse { pos: start, msg })?;
                self.check_size(&acc, start)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PhiElem> {
        if self.eat(b'-') {
            self.enter()?;
            let v = -self.unary()?;
            self.depth -= 1;
            return Ok(v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<PhiElem> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let neg = self.eat(b'-');
        let digits = self.digits().ok_or_else(|| self.err("expected integer exponent"))?;
        let e: i64 = digits
            .parse()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| Error::Parse { pos: start, msg: "exponent too large".into() })?;
        let e = if neg { -e } else { e };
        if size(&base).saturating_mul(e.abs()) > MAX_DEGREE {
            return Err(Error::Parse { pos: start, msg: "result too large".into() });
        }
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        let inv = divide(&PhiElem::one(), &base).map_err(|msg| Error::Parse { pos: start, msg })?;
        Ok(inv.pow((-e) as u32))
    }

    fn atom(&mut self) -> Result<PhiElem> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("peeked a digit");
                let n: BigInt = d.parse().expect("ascii digits");
                Ok(PhiElem::constant(TRat::from_rat(BigRat::from_integer(n))))
            }
            Some(b't') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(&c @ b'0'..=b'2') => {
                        self.pos += 1;
                        let v = (c - b'0') as usize;
                        Ok(PhiElem::constant(TRat::from_poly(TPoly::var(v))))
                    }
                    _ => Err(Error::Parse { pos: start, msg: "expected t0, t1 or t2".into() }),
                }
            }
            Some(b'p') if self.src[self.pos..].starts_with(b"phi") => {
                self.pos += 3;
                Ok(PhiElem::phi_pow(1))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start || self.pos - start > 200 {
            self.pos = start;
            return None;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn check_size(&self, e: &PhiElem, pos: usize) -> Result<()> {
        if size(e) > MAX_DEGREE {
            return Err(Error::Parse { pos, msg: "result too large".into() });
        }
        Ok(())
    }
}

/// A crude size measure bounding both the `t`-degree and the `phi`-span.
fn size(e: &PhiElem) -> i64 {
    let span = match (e.min_exp(), e.max_exp()) {
        (Some(lo), Some(hi)) => lo.unsigned_abs().max(hi.unsigned_abs()) as i64,
        _ => 0,
    };
    let deg = e
        .terms()
        .map(|(_, c)| c.num().total_degree().unwrap_or(0) as i64 + c.den().total_degree().unwrap_or(0) as i64)
        .max()
        .unwrap_or(0);
    span.max(deg).max(1)
}

fn divide(a: &PhiElem, b: &PhiElem) -> std::result::Result<PhiElem, String> {
    if b.num_terms() != 1 {
        return Err(if b.is_zero() { "division by zero".into() } else { "divisor must be a single phi power".into() });
    }
    let (m, c) = b.terms().next().expect("one term");
    let inv = c.inv().map_err(|e| e.to_string())?;
    Ok(a.scale(&inv).shift(-m))
}
