use std::collections::BTreeMap;

use gzb_core::brauer_local::*;
use gzb_core::exact_algebra::{int, Dyadic, PlaceQ};
use proptest::prelude::*;

const FIELDS: [i64; 6] = [2, 3, 5, -1, -2, 7];

fn places(d: i64) -> (Vec<PlaceL>, Vec<PlaceL>) {
    let mut split = Vec::new();
    let mut other = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        for pl in PlaceL::over(PlaceQ::Prime(p), d).unwrap() {
            if pl.kind == SplitKind::Split {
                split.push(pl);
            } else {
                other.push(pl);
            }
        }
    }
    (split, other)
}

fn dy() -> impl Strategy<Value = Dyadic> {
    (0i64..64, 0u32..6).prop_map(|(n, e)| Dyadic::new(n, e))
}

/// Random element: entries on split and non-split finite places, an
/// optional real pair, repaired at the first non-split place.
fn brauer(divisible: bool) -> impl Strategy<Value = BrauerElem> {
    (0usize..FIELDS.len()).prop_flat_map(move |fi| {
        let d = FIELDS[fi];
        let (split, other) = places(d);
        let all: Vec<PlaceL> = split.iter().chain(&other).copied().collect();
        let n = all.len();
        (prop::collection::vec((0..n, dy()), 0..6), any::<bool>()).prop_map(move |(es, real)| {
            let mut entries: Vec<(PlaceL, Dyadic)> = es.into_iter().map(|(i, v)| (all[i], v)).collect();
            if real && d > 0 && !divisible {
                for idx in 0..2 {
                    entries.push((PlaceL::new(PlaceQ::Real, d, idx).unwrap(), Dyadic::half()));
                }
            }
            let s: Dyadic = entries.iter().map(|(_, v)| v.clone()).sum();
            entries.push((other[0], -s));
            BrauerElem::new(d, entries).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn galois_is_involutive_hom(b in brauer(false), c in brauer(false)) {
        let s = b.galois_act();
        s.validate().unwrap();
        prop_assert_eq!(s.galois_act(), b.clone());
        if b.d() == c.d() {
            prop_assert_eq!(b.add(&c).unwrap().galois_act(), s.add(&c.galois_act()).unwrap());
        }
    }

    #[test]
    fn one_minus_sigma_shape(b in brauer(false)) {
        let o = b.one_minus_sigma();
        o.validate().unwrap();
        prop_assert_eq!(o.galois_act(), o.neg());
        for (p, _) in o.entries() {
            prop_assert_eq!(p.kind, SplitKind::Split);
        }
    }

    #[test]
    fn divisibility_by_halving(b in brauer(false)) {
        match b.halve() {
            Some(h) => {
                h.validate().unwrap();
                prop_assert_eq!(h.scale(2), b.clone());
                prop_assert!(b.is_divisible());
            }
            None => prop_assert!(!b.is_divisible()),
        }
    }

    #[test]
    fn beta_i_postconditions(b in brauer(true), i in 0u32..6, twist in prop::collection::vec(0i64..64, 8)) {
        let oms = b.one_minus_sigma();
        let mut z = BTreeMap::new();
        for (k, (p, v)) in oms.entries().filter(|(p, _)| p.index == 0).enumerate() {
            let t = Dyadic::new(twist[k % twist.len()], i + 1);
            z.insert(*p, v.div_pow2(i + 1) + t);
        }
        let bi = construct_beta_i(&b, &z, i).unwrap();
        prop_assert_eq!(bi.mul_pow2(i), b.clone());
        // Exhaustive halving in the invariant lattice: β_i descends to β
        // through i successive halvings, each a valid element.
        let mut x = bi.clone();
        for _ in 0..i {
            x = x.scale(2);
            x.validate().unwrap();
        }
        prop_assert_eq!(x, b.clone());
        let cands = balancing_candidates(&b);
        if cands.len() >= 2 {
            let other = construct_beta_i_with(&b, &z, i, cands[1]).unwrap();
            let diff = bi.sub(&other).unwrap();
            prop_assert!(diff.mul_pow2(i).is_zero());
            prop_assert!(diff.one_minus_sigma().is_zero());
        }
    }

    #[test]
    fn gamma_postconditions(fi in 0usize..FIELDS.len(), vals in prop::collection::vec((0usize..64, dy()), 0..4)) {
        let d = FIELDS[fi];
        let (split, _) = places(d);
        prop_assume!(!split.is_empty());
        let mut entries = Vec::new();
        for (i, v) in vals {
            let p = split[i % split.len()];
            let p0 = if p.index == 0 { p } else { p.sigma() };
            entries.push((p0, v.clone()));
            entries.push((p0.sigma(), -v));
        }
        let gp = BrauerElem::new(d, entries).unwrap();
        let g = construct_gamma(&gp).unwrap();
        prop_assert_eq!(g.one_minus_sigma(), gp.clone());
        prop_assert!(g.order_log2() <= gp.order_log2());
        for q in balancing_candidates(&gp).into_iter().take(3) {
            let h = construct_gamma_with(&gp, q).unwrap();
            prop_assert!(h.sub(&g).unwrap().one_minus_sigma().is_zero());
        }
    }
}

fn squarefree(n: i64) -> bool {
    n != 0 && (2..=5i64).all(|p| n % (p * p) != 0)
}

#[test]
fn split_verdict_matches_search() {
    for c in (-10i64..=10).filter(|&c| squarefree(c)) {
        for d in (-10i64..=10).filter(|&d| squarefree(d)) {
            let r = quaternion_splits(&int(c), &int(d)).unwrap();
            let pt = conic_point_search(&int(c), &int(d), 200).unwrap();
            assert_eq!(r.splits, pt.is_some(), "({c},{d})");
            if let Some((x, y)) = pt {
                assert_eq!(int(c) * &x * &x + int(d) * &y * &y, int(1));
            }
            assert_eq!(r.witnesses.len() % 2, 0);
        }
    }
}
