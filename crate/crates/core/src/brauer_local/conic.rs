use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{
    hilbert_bruteforce, hilbert_symbol, primes_dividing, relevant_places, sqrt_rational, square_class, PlaceQ,
    QuadElem, Rational,
};

/// Local symbols of the quaternion algebra `(c, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub splits: bool,
    /// Every place checked, with its Hilbert symbol.
    pub symbols: Vec<(PlaceQ, i8)>,
    /// Places with symbol `−1`; always of even size.
    pub witnesses: Vec<PlaceQ>,
}

pub fn quaternion_splits(c: &Rational, d: &Rational) -> Result<SplitReport> {
    if c.is_zero() || d.is_zero() {
        return Err(Error::ZeroInput("quaternion_splits"));
    }
    let symbols = relevant_places(c, d)?
        .into_iter()
        .map(|v| Ok((v, hilbert_symbol(c, d, v)?)))
        .collect::<Result<Vec<_>>>()?;
    let witnesses: Vec<PlaceQ> = symbols.iter().filter(|(_, s)| *s == -1).map(|(v, _)| *v).collect();
    Ok(SplitReport {
        splits: witnesses.is_empty(),
        symbols,
        witnesses,
    })
}

fn fits(q: &Rational, bound: &BigInt) -> bool {
    q.numer().abs() <= *bound && q.denom() <= bound
}

/// Searches for `(x, y)` with `1 = c x² + d y²` and numerators and
/// denominators at most `bound`.
///
/// A residue sieve runs first: the conic has no rational point if it has
/// none over `R` or no primitive point modulo a suitable power of some
/// prime dividing `2·c·d` (checked by exhaustive lifting). Otherwise `y`
/// runs over fractions `e/f` with `|e|, f ≤ bound` by increasing height
/// `max(|e|, f)` (starting at `y = 0`), and `x ≥ 0` is read off
/// `x² = (1 − d y²)/c` when that is a rational square.
pub fn conic_point_search(c: &Rational, d: &Rational, bound: u64) -> Result<Option<(Rational, Rational)>> {
    if c.is_zero() || d.is_zero() {
        return Err(Error::ZeroInput("conic_point_search"));
    }
    if bound == 0 {
        return Err(Error::Precondition("search bound must be at least 1".into()));
    }
    if c.is_negative() && d.is_negative() {
        return Ok(None);
    }
    let (cc, dd) = (square_class(c)?, square_class(d)?);
    let (ci, di) = match (cc.to_i64(), dd.to_i64()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::OutOfRange("square classes exceed 64 bits".into())),
    };
    let prod = BigInt::from(2) * cc.abs() * dd.abs();
    for p in primes_dividing(&prod).ok_or_else(|| Error::OutOfRange("factorization".into()))? {
        match hilbert_bruteforce(ci, di, p) {
            Ok(-1) => return Ok(None),
            Ok(_) | Err(Error::OutOfRange(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let big_bound = BigInt::from(bound);
    let one = Rational::from_integer(1.into());
    // y = e/f in lowest terms, by increasing height max(|e|, f)
    let try_y = |e: i64, f: i64| -> Option<(Rational, Rational)> {
        let y = Rational::new(e.into(), f.into());
        let t = (&one - d * &y * &y) / c;
        sqrt_rational(&t).filter(|x| fits(x, &big_bound)).map(|x| (x, y))
    };
    if let Some(pt) = try_y(0, 1) {
        return Ok(Some(pt));
    }
    for h in 1..=bound as i64 {
        for (e_abs, f) in (1..=h).map(|f| (h, f)).chain((1..h).map(|e| (e, h))) {
            if e_abs.gcd(&f) != 1 {
                continue;
            }
            for e in [e_abs, -e_abs] {
                if let Some(pt) = try_y(e, f) {
                    return Ok(Some(pt));
                }
            }
        }
    }
    Ok(None)
}

/// The point `(x, y)` of `1 = c x² + d y²` over `l` with parameter `u`:
/// `x = 2/(u + c/u)`, `y = (2u/(u + c/u) − 1)/√d`.
pub fn conic_parametrize(u: &QuadElem, c: &Rational) -> Result<(QuadElem, QuadElem)> {
    if u.is_zero() {
        return Err(Error::ZeroInput("conic_parametrize"));
    }
    let f = u.field();
    let denom = u + &f.rational(c.clone()) * &u.inv()?;
    if denom.is_zero() {
        return Err(Error::Precondition(format!("u² = −c at u = {u}")));
    }
    let x = &f.int(2) * &denom.inv()?;
    let y = &(&(&f.int(2) * u) * &denom.inv()? - &f.one()) * &f.sqrt_d().inv()?;
    let check = &(&f.rational(c.clone()) * &(&x * &x)) + &(&f.int(f.d()) * &(&y * &y));
    if !check.is_one() {
        return Err(Error::Postcondition(format!("c x² + d y² = {check}")));
    }
    Ok((x, y))
}

/// Inverse of [`conic_parametrize`]: `u = (1 + √d y)/x`.
pub fn conic_uncoordinate(x: &QuadElem, y: &QuadElem) -> Result<QuadElem> {
    if x.is_zero() {
        return Err(Error::ZeroInput("conic_uncoordinate"));
    }
    let f = x.field();
    Ok(&(&f.one() + &(&f.sqrt_d() * y)) * &x.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat, QuadField};

    #[test]
    fn spec_split_examples() {
        let r = quaternion_splits(&int(3), &int(2)).unwrap();
        assert!(!r.splits);
        assert_eq!(r.witnesses, vec![PlaceQ::Prime(2), PlaceQ::Prime(3)]);
        assert!(quaternion_splits(&int(1), &int(2)).unwrap().splits);
        let r27 = quaternion_splits(&int(2), &int(7)).unwrap();
        assert!(r27.symbols.contains(&(PlaceQ::Prime(7), 1)));
        assert_eq!(r27.splits, conic_point_search(&int(2), &int(7), 100).unwrap().is_some());
    }

    #[test]
    fn spec_search_examples() {
        assert_eq!(
            conic_point_search(&int(1), &int(2), 10).unwrap(),
            Some((int(1), int(0)))
        );
        assert_eq!(conic_point_search(&int(3), &int(2), 1000).unwrap(), None);
        assert_eq!(
            conic_point_search(&rat(1, 4), &int(3), 10).unwrap(),
            Some((int(2), int(0)))
        );
    }

    #[test]
    fn plain_enumeration_finds_nothing_for_3_2() {
        // Independent of the sieve: no point with small height.
        for f in 1..=60i64 {
            for e in -60..=60i64 {
                let y = rat(e, f);
                let t = (int(1) - int(2) * &y * &y) / int(3);
                assert!(sqrt_rational(&t).is_none(), "y = {y}");
            }
        }
    }

    #[test]
    fn spec_parametrization() {
        let f = QuadField::new(2).unwrap();
        let (x, y) = conic_parametrize(&f.int(1), &int(3)).unwrap();
        assert_eq!(x, f.rational(rat(1, 2)));
        assert_eq!(y, f.elem(int(0), rat(-1, 4)));
        assert_eq!(conic_uncoordinate(&x, &y).unwrap(), f.int(1));
        let fm = QuadField::new(-3).unwrap();
        assert!(conic_parametrize(&fm.sqrt_d(), &int(3)).is_err());
        assert!(conic_parametrize(&f.zero(), &int(3)).is_err());
    }
}
