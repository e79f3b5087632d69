use std::collections::BTreeMap;

use gzb_core::exact_algebra::Dyadic;
use gzb_core::torsion_core::*;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = SummandKind> {
    prop_oneof![
        (1u32..=4).prop_map(SummandKind::Cyclic),
        Just(SummandKind::Pruefer),
        (1u32..=2).prop_map(SummandKind::GenPruefer),
    ]
}

fn coord(k: SummandKind) -> BoxedStrategy<Coord> {
    match k {
        SummandKind::Cyclic(n) => (0u64..1 << n).prop_map(Coord::Cyc).boxed(),
        SummandKind::Pruefer => (0i64..256, 0u32..8)
            .prop_map(|(j, e)| Coord::Pru(Dyadic::new(j, e)))
            .boxed(),
        SummandKind::GenPruefer(n) => (prop::collection::vec(0u64..16, 5), 0u64..1 << n)
            .prop_map(move |(a, t)| {
                let mut c = Coord::gen_top(t);
                let g = Group::new(GroupDescriptor::plain(vec![k]));
                for (i, v) in a.into_iter().enumerate() {
                    let kk = i as u32 + 1;
                    let e = GroupElem::new(vec![Coord::gen_e(n, kk, (v % (1 << kk)) as i128)]);
                    c = g.add(&GroupElem::new(vec![c]), &e).unwrap().coords.pop().unwrap();
                }
                c
            })
            .boxed(),
    }
}

fn group_and_elem() -> impl Strategy<Value = (Group, GroupElem)> {
    prop::collection::vec(kind(), 1..=4).prop_flat_map(|ks| {
        let g = Group::new(GroupDescriptor::plain(ks.clone()));
        let cs: Vec<BoxedStrategy<Coord>> = ks.into_iter().map(coord).collect();
        (Just(g), cs.prop_map(GroupElem::new))
    })
}

fn exact(h: HeightBound) -> Ordinal {
    match h {
        HeightBound::Exact(o) => o,
        HeightBound::AtLeast(o) => panic!("uncertified height ≥ {o}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symbolic_height_matches_truncation((g, x) in group_and_elem()) {
        prop_assert_eq!(g.height(&x).unwrap(), exact(height_bruteforce(&g, &x, 10).unwrap()));
    }

    #[test]
    fn min_rule((g, x) in group_and_elem()) {
        let h = g.height(&x).unwrap();
        let per = x.coords.iter().zip(g.summands()).map(|(c, &k)| {
            Group::new(GroupDescriptor::plain(vec![k])).height(&GroupElem::new(vec![c.clone()])).unwrap()
        }).min().unwrap();
        prop_assert_eq!(h, per);
    }

    #[test]
    fn doubling_raises_height((g, x) in group_and_elem()) {
        let y = g.double(&x).unwrap();
        if !y.is_zero() {
            let (hx, hy) = (g.height(&x).unwrap(), g.height(&y).unwrap());
            prop_assert!(hy >= hx.succ().unwrap_or(Ordinal::Infinity), "{} -> {}", hx, hy);
        }
    }

    #[test]
    fn group_laws((g, x) in group_and_elem(), m in -9i64..9) {
        let y = g.scale(&x, m).unwrap();
        let z = g.add(&x, &y).unwrap();
        prop_assert_eq!(z, g.scale(&x, m + 1).unwrap());
        prop_assert!(g.add(&x, &g.neg(&x).unwrap()).unwrap().is_zero());
        for h in g.halves(&x).unwrap() {
            prop_assert_eq!(g.double(&h).unwrap(), x.clone());
        }
    }

    #[test]
    fn ulm_is_additive(ks in prop::collection::vec(kind(), 1..=5)) {
        let d = GroupDescriptor::plain(ks.clone());
        let lambdas = (0..6).map(Ordinal::Finite).chain([Ordinal::OMEGA, Ordinal::OmegaPlus(1)]);
        for l in lambdas {
            let total = ulm_invariant(&d, l).unwrap();
            let parts: u64 = ks.iter().map(|&k| ulm_invariant(&GroupDescriptor::plain(vec![k]), l).unwrap()).sum();
            prop_assert_eq!(total, parts);
            prop_assert_eq!(total, ulm_invariant_oracle(&d, l, 8).unwrap());
        }
    }
}

/// Depth-`depth` halving chain exists (searching generalized Prüfer
/// halves within a window large enough to reach it).
fn has_chain(g: &Group, x: &GroupElem, depth: u32, window: u32) -> bool {
    if depth == 0 {
        return true;
    }
    g.halves_within(x, Some(window))
        .unwrap()
        .iter()
        .any(|h| has_chain(g, h, depth - 1, window))
}

#[test]
fn halving_search_agrees_with_height() {
    let g = Group::parse("C1+C3+G1").unwrap();
    for x in g.torsion_elements(3, 2).unwrap() {
        let h = g.height(&x).unwrap();
        for d in 0..=4u32 {
            assert_eq!(has_chain(&g, &x, d, 6), h >= Ordinal::Finite(d), "{x} depth {d}");
        }
    }
}

#[test]
fn spec_torsion_example_exhaustive() {
    let g = Group::parse("C1+C3+P").unwrap();
    let els = g.torsion_elements(6, 0).unwrap();
    assert_eq!(els.len(), 2 * 8 * 64);
    let t = Truncation::for_elements(g.descriptor(), 10, &els).unwrap();
    for x in &els {
        assert_eq!(HeightBound::Exact(g.height(x).unwrap()), t.height(x).unwrap(), "{x}");
    }
    let d = g.descriptor();
    assert_eq!(
        (0..4)
            .map(|m| ulm_invariant(d, Ordinal::Finite(m)).unwrap())
            .collect::<Vec<_>>(),
        vec![1, 0, 1, 0]
    );
}

#[test]
fn divisible_subgroup_is_never_dead_ended() {
    let g = Group::parse("P+P").unwrap();
    let x = GroupElem::pruefer(vec![Dyadic::new(3, 4), Dyadic::new(1, 2)]);
    assert!(has_chain(&g, &x, 6, 1));
    assert_eq!(g.height(&x).unwrap(), Ordinal::Infinity);
}

#[test]
fn gen_fold_matches_truncation() {
    let g = Group::parse("G1").unwrap();
    let e2 = GroupElem::new(vec![Coord::gen_e(1, 2, 2)]);
    let s = g.add(&e2, &e2).unwrap();
    assert_eq!(
        s.coords,
        vec![Coord::Gen {
            a: BTreeMap::new(),
            t: 1
        }]
    );
    let t = Truncation::for_elements(g.descriptor(), 10, &[e2.clone(), s.clone()]).unwrap();
    // x = 4e₂ in the truncation as well: the raw heights of 2·(2e₂) and x coincide.
    assert_eq!(
        t.raw_height(&s).unwrap(),
        t.raw_height(&GroupElem::new(vec![Coord::gen_top(1)])).unwrap()
    );
    assert_eq!(exact(t.height(&s).unwrap()), Ordinal::OMEGA);
}

fn small_involutions(r: usize, lo: i64, hi: i64) -> Vec<Vec<Vec<i64>>> {
    let vals: Vec<i64> = (lo..=hi).collect();
    let cells = r * r;
    let mut out = Vec::new();
    let total = vals.len().pow(cells as u32);
    for code in 0..total {
        let mut c = code;
        let m: Vec<Vec<i64>> = (0..r)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let v = vals[c % vals.len()];
                        c /= vals.len();
                        v
                    })
                    .collect()
            })
            .collect();
        let sq_is_id =
            (0..r).all(|i| (0..r).all(|j| (0..r).map(|k| m[i][k] * m[k][j]).sum::<i64>() == i64::from(i == j)));
        if sq_is_id {
            out.push(m);
        }
    }
    out
}

#[test]
fn inp_exhaustive_rank_two() {
    let ms = small_involutions(2, -3, 3);
    assert!(ms.len() > 10);
    for m in ms {
        let d = inp_decompose(&m, 12).unwrap();
        let (i, n, p) = d.summary();
        assert_eq!(i + n + 2 * p, 2);
        d.verify(10).unwrap();
        d.verify(6).unwrap();
    }
}
