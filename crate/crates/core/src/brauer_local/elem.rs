use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::place::{small_nonsplit_places, PlaceL, SplitKind};
use crate::error::{Error, Result};
use crate::exact_algebra::{Dyadic, QuadField};

/// Extra inert/ramified places added to the support when choosing where
/// corrections may go.
pub const UNIVERSE_EXTRA: usize = 20;

/// An element of `Br(l)₂` for `l = Q(√d)`, given by its nonzero local
/// invariants. Invariants sum to zero, vanish at complex places and lie in
/// `{0, 1/2}` at real places.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrauerElem {
    d: i64,
    inv: BTreeMap<PlaceL, Dyadic>,
}

impl BrauerElem {
    pub fn zero(d: i64) -> Result<Self> {
        QuadField::new(d)?;
        Ok(BrauerElem {
            d,
            inv: BTreeMap::new(),
        })
    }

    pub fn new(d: i64, entries: impl IntoIterator<Item = (PlaceL, Dyadic)>) -> Result<Self> {
        let mut b = BrauerElem::zero(d)?;
        for (p, v) in entries {
            let check = PlaceL::new(p.base, d, p.index)?;
            if check != p {
                return Err(Error::Precondition(format!("{p} has the wrong kind for d = {d}")));
            }
            let cur = b.get(&p);
            b.set_raw(p, cur + v);
        }
        b.validate()?;
        Ok(b)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn get(&self, p: &PlaceL) -> Dyadic {
        self.inv.get(p).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PlaceL, &Dyadic)> {
        self.inv.iter()
    }

    pub fn support(&self) -> Vec<PlaceL> {
        self.inv.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.inv.is_empty()
    }

    fn set_raw(&mut self, p: PlaceL, v: Dyadic) {
        if v.is_zero() {
            self.inv.remove(&p);
        } else {
            self.inv.insert(p, v);
        }
    }

    pub fn invariant_sum(&self) -> Dyadic {
        self.inv.values().cloned().sum()
    }

    /// Reciprocity and the archimedean constraints.
    pub fn validate(&self) -> Result<()> {
        for (p, v) in &self.inv {
            match p.kind {
                SplitKind::Complex => {
                    return Err(Error::Postcondition(format!("nonzero invariant {v} at complex place")))
                }
                SplitKind::RealPair if *v != Dyadic::half() => {
                    return Err(Error::Postcondition(format!("invariant {v} at real place {p}")))
                }
                _ => {}
            }
        }
        let s = self.invariant_sum();
        if !s.is_zero() {
            return Err(Error::Postcondition(format!("invariants sum to {s}, not 0")));
        }
        Ok(())
    }

    fn same_field(&self, o: &BrauerElem) -> Result<()> {
        if self.d != o.d {
            return Err(Error::FieldMismatch(self.d, o.d));
        }
        Ok(())
    }

    pub fn add(&self, o: &BrauerElem) -> Result<BrauerElem> {
        self.same_field(o)?;
        let mut out = self.clone();
        for (p, v) in &o.inv {
            let cur = out.get(p);
            out.set_raw(*p, cur + v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> BrauerElem {
        self.map(|v| -v)
    }

    pub fn sub(&self, o: &BrauerElem) -> Result<BrauerElem> {
        self.add(&o.neg())
    }

    pub fn scale(&self, m: i64) -> BrauerElem {
        let m = BigInt::from(m);
        self.map(|v| v.mul_int(&m))
    }

    pub fn mul_pow2(&self, k: u32) -> BrauerElem {
        self.map(|v| v.mul_pow2(k))
    }

    fn map(&self, f: impl Fn(&Dyadic) -> Dyadic) -> BrauerElem {
        let mut out = BrauerElem {
            d: self.d,
            inv: BTreeMap::new(),
        };
        for (p, v) in &self.inv {
            out.set_raw(*p, f(v));
        }
        out
    }

    /// `k` with order `2^k`.
    pub fn order_log2(&self) -> u32 {
        self.inv.values().map(Dyadic::order_log2).max().unwrap_or(0)
    }

    /// σ(b): `(σb)_𝔭 = b_{σ⁻¹𝔭}`, i.e. swap within split and real pairs.
    pub fn galois_act(&self) -> BrauerElem {
        let mut out = BrauerElem {
            d: self.d,
            inv: BTreeMap::new(),
        };
        for (p, v) in &self.inv {
            out.set_raw(p.sigma(), v.clone());
        }
        out
    }

    pub fn one_minus_sigma(&self) -> BrauerElem {
        self.sub(&self.galois_act()).expect("same field")
    }

    /// Divisible in `Br(l)₂` iff every archimedean invariant vanishes.
    pub fn is_divisible(&self) -> bool {
        self.inv.keys().all(|p| !p.kind.is_archimedean())
    }

    /// Some `h` with `2h = b`, or `None` when `b` is not divisible.
    pub fn halve(&self) -> Option<BrauerElem> {
        if !self.is_divisible() {
            return None;
        }
        let mut h = self.map(Dyadic::halve);
        let s = h.invariant_sum();
        if !s.is_zero() {
            debug_assert_eq!(s, Dyadic::half());
            let q = self
                .universe()
                .into_iter()
                .find(|p| !p.kind.is_archimedean() && !p.kind.is_paired())?;
            let cur = h.get(&q);
            h.set_raw(q, cur + Dyadic::half());
        }
        Some(h)
    }

    /// Support plus the first [`UNIVERSE_EXTRA`] inert/ramified places.
    pub fn universe(&self) -> Vec<PlaceL> {
        let mut u = self.support();
        for p in small_nonsplit_places(self.d, UNIVERSE_EXTRA).expect("valid field") {
            if !u.contains(&p) {
                u.push(p);
            }
        }
        u.sort();
        u
    }

    /// Parses `d=2; 7.0:1/4, 7.1:3/4, 3:1/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, body) = s.split_once(';').unwrap_or((s, ""));
        let d: i64 = head
            .trim()
            .strip_prefix("d=")
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| Error::parse(0, "expected d=<integer>"))?;
        let mut entries = Vec::new();
        let mut pos = head.len() + 1;
        for item in body.split(',') {
            let t = item.trim();
            if !t.is_empty() {
                let (p, v) = t
                    .split_once(':')
                    .ok_or_else(|| Error::parse(pos, "expected place:invariant"))?;
                let place = PlaceL::parse(p, d).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::parse(pos, msg),
                    other => other,
                })?;
                entries.push((place, Dyadic::parse(v.trim())?));
            }
            pos += item.len() + 1;
        }
        BrauerElem::new(d, entries)
    }
}

impl fmt::Display for BrauerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.d)?;
        let parts: Vec<String> = self.inv.iter().map(|(p, v)| format!("{p}:{v}")).collect();
        if !parts.is_empty() {
            write!(f, "; {}", parts.join(", "))?;
        }
        Ok(())
    }
}

impl BrauerElem {
    /// Sum over a slice; `None` for an empty slice.
    pub fn sum(items: &[BrauerElem]) -> Option<Result<BrauerElem>> {
        let (first, rest) = items.split_first()?;
        Some(rest.iter().try_fold(first.clone(), |acc, b| acc.add(b)))
    }

    pub(crate) fn set(&mut self, p: PlaceL, v: Dyadic) {
        self.set_raw(p, v)
    }

    pub(crate) fn zero_unchecked(d: i64) -> Self {
        BrauerElem {
            d,
            inv: BTreeMap::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BrauerElem {
        BrauerElem::parse(s).unwrap()
    }

    #[test]
    fn spec_galois_examples() {
        let x = b("d=2; 7.0:1/4, 7.1:3/4");
        assert_eq!(x.galois_act(), b("d=2; 7.0:3/4, 7.1:1/4"));
        let inert = b("d=2; 3:1/2, 5:1/2");
        assert_eq!(inert.galois_act(), inert);
        assert!(inert.one_minus_sigma().is_zero());
        let y = b("d=2; 7.0:1/4, 3:3/4");
        assert_eq!(y.one_minus_sigma(), b("d=2; 7.0:1/4, 7.1:3/4"));
    }

    #[test]
    fn display_round_trip() {
        let x = b("d=2; 7.0:1/4, 7.1:1/4, 3:1/2, inf.0:1/2, inf.1:1/2");
        assert_eq!(BrauerElem::parse(&x.to_string()).unwrap(), x);
        assert_eq!(x.to_string(), "d=2; 3:1/2, 7.0:1/4, 7.1:1/4, inf.0:1/2, inf.1:1/2");
    }

    #[test]
    fn rejects_invalid() {
        assert!(BrauerElem::parse("d=2; 7.0:1/4").is_err());
        assert!(BrauerElem::parse("d=2; inf.0:1/4, 3:3/4").is_err());
        assert!(BrauerElem::parse("d=-1; inf:1/2, 3:1/2").is_err());
        assert!(BrauerElem::parse("d=4; 3:1/2, 7:1/2").is_err());
        assert!(BrauerElem::parse("d=2; 7:1/2, 3:1/2").is_err());
    }

    #[test]
    fn halving() {
        let x = b("d=2; 7.0:1/4, 7.1:1/4, 3:1/2");
        let h = x.halve().unwrap();
        h.validate().unwrap();
        assert_eq!(h.scale(2), x);
        assert!(b("d=2; inf.0:1/2, 3:1/2").halve().is_none());
    }
}
