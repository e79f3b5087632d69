use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// An element of `Q₂/Z₂`: `num / 2^exp` with representative in `[0, 1)`.
///
/// Normal form: `num` is odd and `0 < num < 2^exp`, or the value is zero
/// with `num = 0, exp = 0`. Equality is therefore structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn half() -> Self {
        Dyadic::new(BigInt::one(), 1)
    }

    /// `num / 2^exp` reduced mod 1.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        let m = BigInt::one() << exp;
        num = num.mod_floor(&m);
        if num.is_zero() {
            return Dyadic::zero();
        }
        let tz = num.trailing_zeros().unwrap_or(0) as u32;
        let s = tz.min(exp);
        num >>= s;
        exp -= s;
        if exp == 0 {
            return Dyadic::zero();
        }
        Dyadic { num, exp }
    }

    pub fn from_rational(q: &Rational) -> Result<Self> {
        let den = q.denom();
        let k = den.trailing_zeros().unwrap_or(0) as u32;
        if (BigInt::one() << k) != *den {
            return Err(Error::Precondition(format!("{q} has a non-dyadic denominator")));
        }
        Ok(Dyadic::new(q.numer().clone(), k))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Dyadic::from_rational(&parse_rational(s)?)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    /// `k` such that the order of this element is `2^k`.
    pub fn order_log2(&self) -> u32 {
        self.exp
    }

    pub fn mul_int(&self, m: &BigInt) -> Self {
        Dyadic::new(&self.num * m, self.exp)
    }

    pub fn double(&self) -> Self {
        self.mul_int(&BigInt::from(2))
    }

    pub fn mul_pow2(&self, k: u32) -> Self {
        if k >= self.exp {
            Dyadic::zero()
        } else {
            Dyadic::new(self.num.clone(), self.exp - k)
        }
    }

    /// The halving `x/2` taken on the `[0, 1)` representative, so the result
    /// lies in `[0, 1/2)`. The other half is this plus `1/2`.
    pub fn halve(&self) -> Self {
        self.div_pow2(1)
    }

    pub fn div_pow2(&self, k: u32) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(self.num.clone(), self.exp + k)
    }

    /// The value as an integer multiple of `2^-level`, if its order allows.
    pub fn scaled(&self, level: u32) -> Option<BigInt> {
        (self.exp <= level).then(|| &self.num << (level - self.exp))
    }

    pub fn scaled_u128(&self, level: u32) -> Option<u128> {
        self.scaled(level).and_then(|v| v.to_u128())
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_d(x: &Dyadic, y: &Dyadic) -> Dyadic {
    let e = x.exp.max(y.exp);
    Dyadic::new((&x.num << (e - x.exp)) + (&y.num << (e - y.exp)), e)
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        add_d(self, rhs)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        add_d(&self, &rhs)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-&self.num, self.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        add_d(self, &-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}
