use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::factor::squarefree_part;
use super::rational::{int, sqrt_rational, Rational};
use crate::error::{Error, Result};

/// The field `Q(√d)` for a squarefree integer `d ∉ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || squarefree_part(&BigInt::from(d).abs()) != BigInt::from(d).abs() {
            return Err(Error::InvalidField(d.to_string()));
        }
        Ok(QuadField { d })
    }

    pub fn d(self) -> i64 {
        self.d
    }

    pub fn elem(self, a: Rational, b: Rational) -> QuadElem {
        QuadElem { a, b, d: self.d }
    }

    pub fn rational(self, a: Rational) -> QuadElem {
        self.elem(a, Rational::zero())
    }

    pub fn int(self, a: i64) -> QuadElem {
        self.rational(int(a))
    }

    pub fn zero(self) -> QuadElem {
        self.int(0)
    }

    pub fn one(self) -> QuadElem {
        self.int(1)
    }

    pub fn sqrt_d(self) -> QuadElem {
        self.elem(int(0), int(1))
    }
}

/// `a + b√d` with exact rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    d: i64,
}

impl QuadElem {
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `σ(a + b√d) = a − b√d`.
    pub fn conj(&self) -> QuadElem {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `N(a + b√d) = a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(self.d) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a * int(2)
    }

    pub fn inv(&self) -> Result<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroInput("inverse of 0"));
        }
        let c = self.conj();
        Ok(QuadElem {
            a: &c.a / &n,
            b: &c.b / &n,
            d: self.d,
        })
    }

    pub fn scale(&self, q: &Rational) -> QuadElem {
        QuadElem {
            a: &self.a * q,
            b: &self.b * q,
            d: self.d,
        }
    }

    pub fn pow(&self, e: i64) -> QuadElem {
        let base = if e < 0 {
            self.inv().expect("pow of 0 with negative exponent")
        } else {
            self.clone()
        };
        let mut acc = self.field().one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    fn check(&self, other: &QuadElem) {
        assert_eq!(self.d, other.d, "QuadElem field mismatch");
    }
}

fn add_q(x: &QuadElem, y: &QuadElem) -> QuadElem {
    x.check(y);
    QuadElem {
        a: &x.a + &y.a,
        b: &x.b + &y.b,
        d: x.d,
    }
}

fn sub_q(x: &QuadElem, y: &QuadElem) -> QuadElem {
    x.check(y);
    QuadElem {
        a: &x.a - &y.a,
        b: &x.b - &y.b,
        d: x.d,
    }
}

fn mul_q(x: &QuadElem, y: &QuadElem) -> QuadElem {
    x.check(y);
    QuadElem {
        a: &x.a * &y.a + int(x.d) * &x.b * &y.b,
        b: &x.a * &y.b + &x.b * &y.a,
        d: x.d,
    }
}

fn div_q(x: &QuadElem, y: &QuadElem) -> QuadElem {
    mul_q(x, &y.inv().expect("division by zero in Q(√d)"))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &QuadElem) -> QuadElem {
                $f(self, rhs)
            }
        }
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                $f(&self, &rhs)
            }
        }
        impl $tr<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &QuadElem) -> QuadElem {
                $f(&self, rhs)
            }
        }
        impl $tr<QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_q);
binop!(Sub, sub, sub_q);
binop!(Mul, mul, mul_q);
binop!(Div, div, div_q);

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// A square root of `x` in `Q(√d)`, if one exists.
///
/// If `x = (s + t√d)²` then `N(x) = n²` with `n = ±(s² − d t²)`, so
/// `s² = (a + n)/2` for one choice of sign; both signs are tried and the
/// candidate is confirmed by squaring.
pub fn sqrt_quad(x: &QuadElem) -> Option<QuadElem> {
    let field = x.field();
    if x.is_zero() {
        return Some(field.zero());
    }
    let n = sqrt_rational(&x.norm())?;
    let two = int(2);
    for n in [n.clone(), -n] {
        let s2 = (&x.a + &n) / &two;
        let Some(s) = sqrt_rational(&s2) else { continue };
        let cand = if s.is_zero() {
            let Some(t) = sqrt_rational(&(&x.a / int(x.d))) else {
                continue;
            };
            field.elem(Rational::zero(), t)
        } else {
            let t = &x.b / (&two * &s);
            field.elem(s, t)
        };
        if &cand * &cand == *x {
            return Some(cand);
        }
    }
    None
}

pub fn is_square_quad(x: &QuadElem) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput("is_square_quad"));
    }
    Ok(sqrt_quad(x).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    fn q2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(QuadField::new(0).is_err());
        assert!(QuadField::new(1).is_err());
        assert!(QuadField::new(8).is_err());
        assert!(QuadField::new(-1).is_ok());
        assert!(QuadField::new(-15).is_ok());
    }

    #[test]
    fn conj_and_norm() {
        let f = q2();
        let x = f.elem(int(1), int(1));
        assert_eq!(x.conj(), f.elem(int(1), int(-1)));
        assert_eq!(f.int(3).conj(), f.int(3));
        assert_eq!(x.norm(), int(-1));
        assert_eq!(f.elem(int(3), int(1)).norm(), int(7));
        assert_eq!(f.elem(int(2), int(1)).norm(), int(2));
    }

    #[test]
    fn squares() {
        let f = q2();
        assert!(is_square_quad(&f.elem(int(3), int(2))).unwrap());
        assert!(!is_square_quad(&f.sqrt_d()).unwrap());
        assert!(is_square_quad(&f.int(4)).unwrap());
        assert!(is_square_quad(&f.int(2)).unwrap());
        assert!(is_square_quad(&f.rational(rat(1, 8))).unwrap());
        assert!(!is_square_quad(&f.int(3)).unwrap());
        assert!(is_square_quad(&f.zero()).is_err());
        let r = sqrt_quad(&f.elem(int(3), int(2))).unwrap();
        assert_eq!(&r * &r, f.elem(int(3), int(2)));
    }

    #[test]
    fn display() {
        let f = q2();
        assert_eq!(f.elem(int(1), int(-1)).to_string(), "1-1*sqrt(2)");
        assert_eq!(f.elem(rat(1, 2), int(3)).to_string(), "1/2+3*sqrt(2)");
        assert_eq!(f.int(-3).to_string(), "-3");
    }
}
