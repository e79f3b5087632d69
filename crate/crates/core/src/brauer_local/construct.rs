use std::collections::BTreeMap;

use super::elem::BrauerElem;
use super::place::{PlaceL, SplitKind};
use crate::error::{Error, Result};
use crate::exact_algebra::Dyadic;

/// Inert or ramified places of the support universe at which `b` vanishes,
/// inert places first, each group by increasing prime.
pub fn balancing_candidates(b: &BrauerElem) -> Vec<PlaceL> {
    let mut c: Vec<PlaceL> = b
        .universe()
        .into_iter()
        .filter(|p| matches!(p.kind, SplitKind::Inert | SplitKind::Ramified) && b.get(p).is_zero())
        .collect();
    c.sort_by_key(|p| (p.kind != SplitKind::Inert, p.base));
    c
}

fn default_balancer(b: &BrauerElem) -> Result<PlaceL> {
    balancing_candidates(b)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Precondition("no inert or ramified place with zero invariant".into()))
}

fn check_balancer(b: &BrauerElem, q: PlaceL) -> Result<()> {
    if !matches!(q.kind, SplitKind::Inert | SplitKind::Ramified) || !b.get(&q).is_zero() {
        return Err(Error::Precondition(format!(
            "{q} is not an inert/ramified place with zero invariant"
        )));
    }
    Ok(())
}

/// `β_i` with `2^i β_i = β` and `(1 − σ)β_i = 2z` on split pairs.
///
/// `z` is keyed by the index-0 place of each split pair (missing pairs
/// mean `z = 0`) and must satisfy `2^(i+1) z = ((1 − σ)β)_𝔭₁`. At a pair
/// `(𝔭₁, 𝔭₂)` with `y = β_𝔭₂` the invariants are `2z + y/2^i` and `y/2^i`;
/// at other finite non-split places `β_𝔭/2^i`; the balancing place `q`
/// absorbs the sum.
pub fn construct_beta_i(beta: &BrauerElem, z: &BTreeMap<PlaceL, Dyadic>, i: u32) -> Result<BrauerElem> {
    construct_beta_i_with(beta, z, i, default_balancer(beta)?)
}

pub fn construct_beta_i_with(beta: &BrauerElem, z: &BTreeMap<PlaceL, Dyadic>, i: u32, q: PlaceL) -> Result<BrauerElem> {
    if !beta.is_divisible() {
        return Err(Error::Precondition("β has a nonzero archimedean invariant".into()));
    }
    check_balancer(beta, q)?;
    let oms = beta.one_minus_sigma();
    for p in z.keys() {
        if p.kind != SplitKind::Split || p.index != 0 {
            return Err(Error::Precondition(format!(
                "z is keyed by {p}, not an index-0 split place"
            )));
        }
    }
    let mut pairs: Vec<PlaceL> = beta
        .support()
        .into_iter()
        .chain(z.keys().copied())
        .filter(|p| p.kind == SplitKind::Split)
        .map(|p| if p.index == 0 { p } else { p.sigma() })
        .collect();
    pairs.sort();
    pairs.dedup();
    for p in &pairs {
        let zp = z.get(p).cloned().unwrap_or_default();
        if zp.mul_pow2(i + 1) != oms.get(p) {
            return Err(Error::Precondition(format!("2^{} z ≠ ((1−σ)β) at {p}", i + 1)));
        }
    }
    let mut out = BrauerElem::zero_unchecked(beta.d());
    for p in &pairs {
        let zp = z.get(p).cloned().unwrap_or_default();
        let y = beta.get(&p.sigma()).div_pow2(i);
        out.set(*p, zp.double() + y.clone());
        out.set(p.sigma(), y);
    }
    for p in beta.support() {
        if matches!(p.kind, SplitKind::Inert | SplitKind::Ramified) {
            out.set(p, beta.get(&p).div_pow2(i));
        }
    }
    let rest = out.invariant_sum();
    out.set(q, -rest);

    out.validate()?;
    if out.mul_pow2(i) != *beta {
        return Err(Error::Postcondition("2^i β_i ≠ β".into()));
    }
    let image = out.one_minus_sigma();
    for (p, v) in image.entries() {
        let expect = match (p.kind, p.index) {
            (SplitKind::Split, 0) => z.get(p).cloned().unwrap_or_default().double(),
            (SplitKind::Split, _) => -z.get(&p.sigma()).cloned().unwrap_or_default().double(),
            _ => Dyadic::zero(),
        };
        if *v != expect {
            return Err(Error::Postcondition(format!(
                "(1−σ)β_i at {p} is {v}, expected {expect}"
            )));
        }
    }
    Ok(out)
}

/// `γ` with `γ_𝔭₁ = γ'_𝔭₁`, `γ_𝔭₂ = 0` on split pairs, balanced at an
/// inert/ramified place, so that `(1 − σ)γ = γ'`.
pub fn construct_gamma(gamma_prime: &BrauerElem) -> Result<BrauerElem> {
    construct_gamma_with(gamma_prime, default_balancer(gamma_prime)?)
}

pub fn construct_gamma_with(gamma_prime: &BrauerElem, q: PlaceL) -> Result<BrauerElem> {
    if gamma_prime.galois_act() != gamma_prime.neg() {
        return Err(Error::Precondition("γ' is not σ-negated".into()));
    }
    if gamma_prime.support().iter().any(|p| p.kind != SplitKind::Split) {
        return Err(Error::Precondition("γ' must vanish off split places".into()));
    }
    check_balancer(gamma_prime, q)?;
    let mut out = BrauerElem::zero_unchecked(gamma_prime.d());
    for (p, v) in gamma_prime.entries() {
        if p.index == 0 {
            out.set(*p, v.clone());
        }
    }
    let rest = out.invariant_sum();
    out.set(q, -rest);
    out.validate()?;
    if out.one_minus_sigma() != *gamma_prime {
        return Err(Error::Postcondition("(1−σ)γ ≠ γ'".into()));
    }
    if out.order_log2() > gamma_prime.order_log2() {
        return Err(Error::Postcondition("order of γ exceeds order of γ'".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::PlaceQ;

    fn b(s: &str) -> BrauerElem {
        BrauerElem::parse(s).unwrap()
    }

    #[test]
    fn spec_gamma_example() {
        let gp = b("d=2; 7.0:1/4, 7.1:3/4");
        let g = construct_gamma(&gp).unwrap();
        assert_eq!(g, b("d=2; 7.0:1/4, 3:3/4"));
        assert!(construct_gamma(&BrauerElem::zero(2).unwrap()).unwrap().is_zero());
        assert!(construct_gamma(&b("d=2; 7.0:1/4, 3:3/4")).is_err());
    }

    #[test]
    fn beta_zero_and_i_zero() {
        let z = BTreeMap::new();
        assert!(construct_beta_i(&BrauerElem::zero(2).unwrap(), &z, 3)
            .unwrap()
            .is_zero());
        let beta = b("d=2; 7.0:1/4, 3:3/4");
        let p70 = PlaceL::new(PlaceQ::Prime(7), 2, 0).unwrap();
        let zmap = BTreeMap::from([(p70, Dyadic::parse("1/8").unwrap())]);
        let b0 = construct_beta_i(&beta, &zmap, 0).unwrap();
        assert_eq!(b0, beta);
        let b2 = construct_beta_i(&beta, &BTreeMap::from([(p70, Dyadic::parse("1/32").unwrap())]), 2).unwrap();
        assert_eq!(b2.mul_pow2(2), beta);
        assert!(construct_beta_i(&beta, &BTreeMap::new(), 2).is_err());
    }
}
