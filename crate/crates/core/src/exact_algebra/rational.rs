use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::factor::squarefree_part;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, `p/q` with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, format!("bad numerator in {t:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::parse(num.len() + 1, format!("bad denominator in {t:?}")))?;
    if d.is_zero() {
        return Err(Error::parse(num.len() + 1, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn sqrt_rational(x: &Rational) -> Option<Rational> {
    let n = isqrt_exact(x.numer())?;
    let d = isqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_square_rational(x: &Rational) -> bool {
    sqrt_rational(x).is_some()
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

pub fn v2_big(n: &BigInt) -> u32 {
    n.trailing_zeros().map(|v| v as u32).unwrap_or(0)
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn square_class(x: &Rational) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::ZeroInput("square class of 0"));
    }
    let m = x.numer() * x.denom();
    let s = squarefree_part(&m.abs());
    Ok(if m.is_negative() { -s } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_tests() {
        assert!(is_square_rational(&rat(49, 4)));
        assert!(!is_square_rational(&int(7)));
        assert!(!is_square_rational(&int(-4)));
        assert!(is_square_rational(&int(0)));
    }

    #[test]
    fn parses() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn classes() {
        assert_eq!(square_class(&rat(8, 9)).unwrap(), BigInt::from(2));
        assert_eq!(square_class(&rat(-1, 12)).unwrap(), BigInt::from(-3));
        assert_eq!(square_class(&rat(1, 4)).unwrap(), BigInt::from(1));
    }
}
