use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{is_prime, primes_dividing};
use super::rational::{valuation, Rational};
use crate::error::{Error, Result};

/// A place of `Q`: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceQ {
    Prime(u64),
    Real,
}

impl PlaceQ {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "real" {
            return Ok(PlaceQ::Real);
        }
        let p: u64 = t.parse().map_err(|_| Error::parse(0, format!("bad place {t:?}")))?;
        if !is_prime(&BigInt::from(p)) {
            return Err(Error::parse(0, format!("{p} is not prime")));
        }
        Ok(PlaceQ::Prime(p))
    }
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Prime(p) => write!(f, "{p}"),
            PlaceQ::Real => write!(f, "inf"),
        }
    }
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: &BigInt) -> Result<i8> {
    if *p <= BigInt::from(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Ok(0);
    }
    let e = (p - 1u32) >> 1;
    let r = a.modpow(&e, p);
    Ok(if r.is_one() { 1 } else { -1 })
}

fn sign(neg: bool) -> i8 {
    if neg {
        -1
    } else {
        1
    }
}

/// Integer in the same square class as the rational `x`.
fn class_integer(x: &Rational) -> BigInt {
    x.numer() * x.denom()
}

fn split_p(n: &BigInt, p: u64) -> (u32, BigInt) {
    let v = valuation(n, p);
    let u = n / BigInt::from(p).pow(v);
    (v, u)
}

fn mod8(u: &BigInt) -> u8 {
    u.mod_floor(&BigInt::from(8)).to_u8().expect("small")
}

/// Hilbert symbol `(a, b)_v` over `Q_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: PlaceQ) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("hilbert_symbol"));
    }
    let p = match v {
        PlaceQ::Real => return Ok(sign(a.is_negative() && b.is_negative())),
        PlaceQ::Prime(p) => p,
    };
    if !is_prime(&BigInt::from(p)) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let (alpha, u) = split_p(&class_integer(a), p);
    let (beta, w) = split_p(&class_integer(b), p);
    if p == 2 {
        let (u8_, w8) = (mod8(&u), mod8(&w));
        let eps = |x: u8| ((x - 1) / 2) % 2;
        let omega = |x: u8| ((x as u32 * x as u32 - 1) / 8 % 2) as u8;
        let e = eps(u8_) * eps(w8) + (alpha as u8 % 2) * omega(w8) + (beta as u8 % 2) * omega(u8_);
        return Ok(sign(e % 2 == 1));
    }
    let bp = BigInt::from(p);
    let mut s = sign(alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3);
    if beta % 2 == 1 {
        s *= legendre_symbol(&u, &bp)?;
    }
    if alpha % 2 == 1 {
        s *= legendre_symbol(&w, &bp)?;
    }
    Ok(s)
}

/// The real place and every prime dividing `2·num·den` of `a` and `b`:
/// the only places where `(a, b)_v` can be `−1`.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<PlaceQ>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("relevant_places"));
    }
    let prod = BigInt::from(2) * a.numer().abs() * a.denom() * b.numer().abs() * b.denom();
    let primes = primes_dividing(&prod).ok_or_else(|| Error::OutOfRange("prime factor exceeds 64 bits".into()))?;
    let mut out: Vec<PlaceQ> = primes.into_iter().map(PlaceQ::Prime).collect();
    out.push(PlaceQ::Real);
    Ok(out)
}
