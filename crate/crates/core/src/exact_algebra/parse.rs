//! Text syntax for field elements and polynomials over `Q(√d)`, e.g.
//! `1/2+3*sqrt(2)` or `u^2 - (1+1*sqrt(2))*u + 3`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::QuadPoly;
use super::quad::{QuadElem, QuadField};
use super::rational::{isqrt_exact, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: QuadField,
}

impl<'a> Parser<'a> {
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<QuadPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let den = self.unary()?;
                if den.degree() != Some(0) {
                    return Err(Error::parse(at, "division by a non-constant or zero"));
                }
                acc = acc.scale(&den.lc().inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadPoly> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.integer()?.to_u32().filter(|&e| e <= 64);
            let e = e.ok_or_else(|| Error::parse(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QuadPoly> {
        let f = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QuadPoly::constant(f.rational(Rational::from_integer(n))))
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(QuadPoly::u(f))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                let at = self.pos;
                self.pos += 4;
                self.expect(b'(')?;
                let neg = self.eat(b'-');
                let mut m = self.integer()?;
                if neg {
                    m = -m;
                }
                self.expect(b')')?;
                Ok(QuadPoly::constant(sqrt_in_field(f, &m).ok_or_else(|| {
                    Error::parse(at, format!("sqrt({m}) is not in Q(sqrt({}))", f.d()))
                })?))
            }
            _ => Err(Error::parse(self.pos, "unexpected token")),
        }
    }
}

fn sqrt_in_field(f: QuadField, m: &BigInt) -> Option<QuadElem> {
    if m.is_zero() {
        return Some(f.zero());
    }
    if let Some(r) = isqrt_exact(m) {
        return Some(f.rational(Rational::from_integer(r)));
    }
    let d = BigInt::from(f.d());
    if (m % &d).is_zero() && (m / &d).is_positive() {
        let k = isqrt_exact(&(m / &d))?;
        return Some(f.elem(Rational::zero(), Rational::from_integer(k)));
    }
    None
}

pub fn parse_poly(s: &str, field: QuadField) -> Result<QuadPoly> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        field,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(e)
}

pub fn parse_quad(s: &str, field: QuadField) -> Result<QuadElem> {
    let p = parse_poly(s, field)?;
    match p.degree() {
        None => Ok(field.zero()),
        Some(0) => Ok(p.lc()),
        Some(_) => Err(Error::parse(0, "expected a constant, found a polynomial in u")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat};

    #[test]
    fn round_trips() {
        let f = QuadField::new(2).unwrap();
        let x = parse_quad("1/2+3*sqrt(2)", f).unwrap();
        assert_eq!(x, f.elem(rat(1, 2), int(3)));
        assert_eq!(parse_quad(&x.to_string(), f).unwrap(), x);
        let p = parse_poly("u^2 - (1+1*sqrt(2))*u + 3", f).unwrap();
        assert_eq!(parse_poly(&p.to_string(), f).unwrap(), p);
        assert_eq!(p.coeff(1), -f.elem(int(1), int(1)));
        assert_eq!(parse_quad("sqrt(8)", f).unwrap(), f.elem(int(0), int(2)));
    }

    #[test]
    fn errors_carry_positions() {
        let f = QuadField::new(2).unwrap();
        match parse_poly("u^2 + sqrt(3)", f) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_quad("u", f).is_err());
        assert!(parse_poly("1 +", f).is_err());
        assert!(parse_poly("(1", f).is_err());
    }
}
