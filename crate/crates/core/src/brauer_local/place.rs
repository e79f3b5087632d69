use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{is_prime, legendre_symbol, PlaceQ, QuadField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
    RealPair,
    Complex,
}

impl SplitKind {
    /// Places lying in a σ-swapped pair.
    pub fn is_paired(self) -> bool {
        matches!(self, SplitKind::Split | SplitKind::RealPair)
    }

    pub fn is_archimedean(self) -> bool {
        matches!(self, SplitKind::RealPair | SplitKind::Complex)
    }
}

/// How the place `base` of `Q` behaves in `Q(√d)`.
pub fn splitting_type(base: PlaceQ, d: i64) -> Result<SplitKind> {
    QuadField::new(d)?;
    match base {
        PlaceQ::Real => Ok(if d > 0 { SplitKind::RealPair } else { SplitKind::Complex }),
        PlaceQ::Prime(2) => Ok(match d.rem_euclid(8) {
            1 => SplitKind::Split,
            5 => SplitKind::Inert,
            _ => SplitKind::Ramified,
        }),
        PlaceQ::Prime(p) => {
            if !is_prime(&BigInt::from(p)) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
            Ok(match legendre_symbol(&BigInt::from(d), &BigInt::from(p))? {
                0 => SplitKind::Ramified,
                1 => SplitKind::Split,
                _ => SplitKind::Inert,
            })
        }
    }
}

/// A place of `l = Q(√d)`.
///
/// Over a split prime `p`, index 0 is the place at which `√d` reduces to
/// the smaller of the two square roots of `d` in `[0, p)`; for `p = 2` it
/// is the one where `√d ≡ 1 mod 4` in `Z₂`. Over the real place, index 0
/// is the embedding with `√d > 0`. σ swaps the two indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaceL {
    pub base: PlaceQ,
    pub kind: SplitKind,
    pub index: u8,
}

impl PlaceL {
    pub fn new(base: PlaceQ, d: i64, index: u8) -> Result<Self> {
        let kind = splitting_type(base, d)?;
        if index > 1 || (index == 1 && !kind.is_paired()) {
            return Err(Error::Precondition(format!(
                "index {index} is invalid over {base} ({kind:?})"
            )));
        }
        Ok(PlaceL { base, kind, index })
    }

    /// All places over `base`.
    pub fn over(base: PlaceQ, d: i64) -> Result<Vec<PlaceL>> {
        let kind = splitting_type(base, d)?;
        let n = if kind.is_paired() { 2 } else { 1 };
        Ok((0..n).map(|index| PlaceL { base, kind, index }).collect())
    }

    pub fn sigma(self) -> PlaceL {
        if self.kind.is_paired() {
            PlaceL {
                index: 1 - self.index,
                ..self
            }
        } else {
            self
        }
    }

    /// Parses `7.0`, `3`, `inf.1` or `inf`.
    pub fn parse(s: &str, d: i64) -> Result<Self> {
        let t = s.trim();
        let (b, idx) = match t.split_once('.') {
            Some((b, i)) => {
                let i: u8 = i
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad place index in {t:?}")))?;
                (b, Some(i))
            }
            None => (t, None),
        };
        let base = PlaceQ::parse(b)?;
        let kind = splitting_type(base, d)?;
        match (kind.is_paired(), idx) {
            (true, Some(i)) => PlaceL::new(base, d, i),
            (true, None) => Err(Error::parse(0, format!("{t}: split place needs an index .0 or .1"))),
            (false, None | Some(0)) => PlaceL::new(base, d, 0),
            (false, Some(_)) => Err(Error::parse(0, format!("{t}: only split places carry an index"))),
        }
    }
}

impl fmt::Display for PlaceL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.is_paired() {
            write!(f, "{}.{}", self.base, self.index)
        } else {
            write!(f, "{}", self.base)
        }
    }
}

/// The square root of `d` mod an odd split prime `p` naming index 0.
pub fn split_root(p: u64, d: i64) -> Result<u64> {
    if splitting_type(PlaceQ::Prime(p), d)? != SplitKind::Split || p == 2 {
        return Err(Error::Precondition(format!(
            "{p} is not an odd split prime for d = {d}"
        )));
    }
    let pb = BigInt::from(p);
    let a = BigInt::from(d).mod_floor(&pb);
    let r = tonelli_shanks(&a, &pb);
    let other = &pb - &r;
    Ok(r.min(other).to_u64().expect("below p"))
}

fn tonelli_shanks(a: &BigInt, p: &BigInt) -> BigInt {
    let one = BigInt::one();
    let pm1: BigInt = p - 1u32;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), p) != pm1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        if t.is_zero() {
            return BigInt::zero();
        }
        let mut i = 0;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = &tt * &tt % p;
            i += 1;
        }
        let b = c.modpow(&(&one << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    r
}

/// The first `count` inert or ramified finite places, smallest prime first.
pub fn small_nonsplit_places(d: i64, count: usize) -> Result<Vec<PlaceL>> {
    let mut out = Vec::with_capacity(count);
    let mut p = 2u64;
    while out.len() < count {
        if is_prime(&BigInt::from(p)) {
            let kind = splitting_type(PlaceQ::Prime(p), d)?;
            if matches!(kind, SplitKind::Inert | SplitKind::Ramified) {
                out.push(PlaceL {
                    base: PlaceQ::Prime(p),
                    kind,
                    index: 0,
                });
            }
        }
        p += 1;
    }
    Ok(out)
}
