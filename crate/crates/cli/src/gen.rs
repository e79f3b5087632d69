//! Seeded random instance generators for the self-test suites.

use std::collections::BTreeMap;

use gzb_core::brauer_local::{BrauerElem, PlaceL, SplitKind};
use gzb_core::exact_algebra::{int, rat, Dyadic, PlaceQ, QuadElem, QuadField, QuadPoly, Rational};
use gzb_core::kummer_chars::{Char2L, Char2P, FactoredRF, IrredPoly};
use gzb_core::torsion_core::{ActionTag, Coord, GroupDescriptor, GroupElem, InvolutionSpec, SummandKind, Tower};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lift::QuotientModel;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero_rational(r: &mut Rng8, num: i64, den: i64) -> Rational {
    loop {
        let n = r.gen_range(-num..=num);
        if n != 0 {
            return rat(n, r.gen_range(1..=den));
        }
    }
}

pub const FIELDS: [i64; 6] = [2, 3, 5, -1, -2, 7];
const PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Finite places of `Q(√d)` over small primes, split ones first.
pub fn finite_places(d: i64) -> (Vec<PlaceL>, Vec<PlaceL>) {
    let mut split = Vec::new();
    let mut other = Vec::new();
    for p in PRIMES {
        for pl in PlaceL::over(PlaceQ::Prime(p), d).expect("valid field") {
            if pl.kind == SplitKind::Split {
                split.push(pl);
            } else {
                other.push(pl);
            }
        }
    }
    (split, other)
}

fn dyadic(r: &mut Rng8) -> Dyadic {
    Dyadic::new(r.gen_range(0i64..64), r.gen_range(0u32..6))
}

/// Random element of `Br(Q(√d))₂`, balanced at the first non-split place.
/// Unless `divisible`, real places of a real field get independent
/// invariants in `{0, 1/2}`.
pub fn brauer_elem(r: &mut Rng8, d: i64, divisible: bool) -> BrauerElem {
    let (split, other) = finite_places(d);
    let all: Vec<PlaceL> = split.iter().chain(&other).copied().collect();
    let mut entries: Vec<(PlaceL, Dyadic)> = (0..r.gen_range(0..6))
        .map(|_| (*all.choose(r).expect("places"), dyadic(r)))
        .collect();
    if !divisible && d > 0 {
        for idx in 0..2 {
            if r.gen_bool(0.5) {
                entries.push((PlaceL::new(PlaceQ::Real, d, idx).expect("real place"), Dyadic::half()));
            }
        }
    }
    let s: Dyadic = entries.iter().map(|(_, v)| v.clone()).sum();
    entries.push((other[0], -s));
    BrauerElem::new(d, entries).expect("balanced")
}

pub fn any_brauer_elem(r: &mut Rng8) -> BrauerElem {
    let d = *FIELDS.choose(r).expect("fields");
    brauer_elem(r, d, false)
}

/// `(β, z, i)` meeting the preconditions of `construct_beta_i`: `β`
/// divisible and `2^(i+1) z = (1 − σ)β` on every split pair.
pub fn beta_instance(r: &mut Rng8) -> (BrauerElem, BTreeMap<PlaceL, Dyadic>, u32) {
    let d = *FIELDS.choose(r).expect("fields");
    let b = brauer_elem(r, d, true);
    let i = r.gen_range(0u32..6);
    let oms = b.one_minus_sigma();
    let mut z = BTreeMap::new();
    for (p, v) in oms.entries().filter(|(p, _)| p.index == 0) {
        let twist = Dyadic::new(r.gen_range(0i64..64), i + 1);
        z.insert(*p, v.div_pow2(i + 1) + twist);
    }
    (b, z, i)
}

/// A σ-negated `γ'` supported on split pairs.
pub fn gamma_prime(r: &mut Rng8) -> BrauerElem {
    let fields: Vec<i64> = FIELDS
        .iter()
        .copied()
        .filter(|&d| !finite_places(d).0.is_empty())
        .collect();
    let d = *fields.choose(r).expect("fields");
    let (split, _) = finite_places(d);
    let mut entries = Vec::new();
    for _ in 0..r.gen_range(0..4) {
        let p = *split.choose(r).expect("split");
        let p0 = if p.index == 0 { p } else { p.sigma() };
        let v = dyadic(r);
        entries.push((p0, v.clone()));
        entries.push((p0.sigma(), -v));
    }
    BrauerElem::new(d, entries).expect("σ-negated pairs sum to zero")
}

pub fn l2() -> QuadField {
    QuadField::new(2).expect("Q(√2)")
}

pub fn small_elem(r: &mut Rng8) -> QuadElem {
    let a = rat(r.gen_range(-6..=6), r.gen_range(1..=3));
    let b = rat(r.gen_range(-4..=4), r.gen_range(1..=2));
    l2().elem(a, b)
}

pub fn nonzero_elem(r: &mut Rng8) -> QuadElem {
    loop {
        let e = small_elem(r);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn c_value(r: &mut Rng8) -> Rational {
    int(*[3i64, 5, 7].choose(r).expect("c"))
}

pub fn irred_quadratic(r: &mut Rng8) -> IrredPoly {
    loop {
        let (b, n) = (small_elem(r), nonzero_elem(r));
        if let Ok(p) = IrredPoly::new(QuadPoly::new(l2(), vec![n, b, l2().one()])) {
            return p;
        }
    }
}

/// Irreducible of degree 1 or 2 with nonzero constant term.
pub fn irred_low(r: &mut Rng8) -> IrredPoly {
    if r.gen_bool(0.5) {
        IrredPoly::new(QuadPoly::linear(&nonzero_elem(r))).expect("linear")
    } else {
        irred_quadratic(r)
    }
}

/// Self-tilde `p` for `c`: `u² + r·w·u + c·w/σ(w)` or `u − a` with `N(a) = c`.
pub fn self_tilde(r: &mut Rng8) -> (IrredPoly, Rational) {
    let field = l2();
    if r.gen_ratio(1, 4) {
        let a = nonzero_elem(r);
        return (IrredPoly::new(QuadPoly::linear(&a)).expect("linear"), a.norm());
    }
    loop {
        let (w, k, c) = (nonzero_elem(r), r.gen_range(-4i64..=4), c_value(r));
        let n = &field.rational(c.clone()) * &(&w * &w.conj().inv().expect("w ≠ 0"));
        let b = w.scale(&int(k));
        if let Ok(p) = IrredPoly::new(QuadPoly::new(field, vec![n, b, field.one()])) {
            return (p, c);
        }
    }
}

pub fn char_over(r: &mut Rng8, p: IrredPoly) -> Char2P {
    loop {
        let f = QuadPoly::new(l2(), vec![small_elem(r), small_elem(r)])
            .rem(p.poly())
            .expect("monic modulus");
        if !f.is_zero() {
            return Char2P::new(p, f).expect("nonzero residue");
        }
    }
}

pub fn random_char(r: &mut Rng8) -> Char2P {
    let p = irred_low(r);
    char_over(r, p)
}

pub fn factored(r: &mut Rng8) -> FactoredRF {
    let unit = nonzero_elem(r);
    let k = r.gen_range(-3i64..=3);
    let fs: Vec<(IrredPoly, i64)> = (0..r.gen_range(0..=3))
        .map(|_| (irred_low(r), r.gen_range(-2i64..=2)))
        .collect();
    FactoredRF::new(unit, k, fs).expect("valid factorization")
}

pub const FAMILY_BETAS: [&str; 5] = [
    "d=2; ",
    "d=2; 7.0:1/2, 3:1/2",
    "d=2; 7.0:1/2, 7.1:1/2",
    "d=2; 17.1:1/2, inf.0:1/2",
    "d=2; 3:1/2, 5:1/2",
];

/// `(β, χ_u, {χ_p})` over `Q(√2)` with low-degree characters.
pub fn brlu_parts(r: &mut Rng8) -> (BrauerElem, Option<Char2L>, Vec<Char2P>) {
    let beta = BrauerElem::parse(FAMILY_BETAS.choose(r).expect("betas")).expect("valid beta");
    let chi_u = if r.gen_bool(0.5) {
        Char2L::from_class(nonzero_elem(r)).expect("nonzero")
    } else {
        None
    };
    let chis = (0..r.gen_range(0..=3)).map(|_| random_char(r)).collect();
    (beta, chi_u, chis)
}

/// A random `r × r` integer involution `P·D·P⁻¹`, `D` a block sum of
/// `1`, `-1` and `[[0,1],[1,0]]`, `P` a product of elementary matrices.
pub fn random_involution(rg: &mut Rng8, r: usize) -> Vec<Vec<i64>> {
    let mut d = vec![vec![0i64; r]; r];
    let mut i = 0;
    while i < r {
        match rg.gen_range(0..3) {
            2 if i + 1 < r => {
                d[i][i + 1] = 1;
                d[i + 1][i] = 1;
                i += 2;
            }
            k => {
                d[i][i] = if k == 0 { 1 } else { -1 };
                i += 1;
            }
        }
    }
    // M ← E M E⁻¹ with E = I + t·e_{ab}: add t·row b to row a, then
    // subtract t·column a from column b.
    let mut m = d;
    for _ in 0..rg.gen_range(0..=r + 2) {
        let a = rg.gen_range(0..r);
        let b = rg.gen_range(0..r);
        if a == b {
            continue;
        }
        let t = *[-2i64, -1, 1, 2].choose(rg).expect("t");
        let next: Vec<Vec<i64>> = {
            let mut x = m.clone();
            for j in 0..r {
                x[a][j] += t * m[b][j];
            }
            for row in x.iter_mut() {
                row[b] -= t * row[a];
            }
            x
        };
        if next.iter().flatten().all(|v| v.abs() <= 64) {
            m = next;
        }
    }
    m
}

/// Every `r × r` involution with entries in `lo..=hi`.
pub fn all_involutions(r: usize, lo: i64, hi: i64) -> Vec<Vec<Vec<i64>>> {
    let vals: Vec<i64> = (lo..=hi).collect();
    let n = vals.len();
    let cells = (r * r) as u32;
    let mut out = Vec::new();
    let mut m = vec![vec![0i64; r]; r];
    for code in 0..n.pow(cells) {
        let mut c = code;
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = vals[c % n];
                c /= n;
            }
        }
        let inv = (0..r).all(|i| (0..r).all(|j| (0..r).map(|k| m[i][k] * m[k][j]).sum::<i64>() == i64::from(i == j)));
        if inv {
            out.push(m.clone());
        }
    }
    out
}

pub const ULM_KINDS: [SummandKind; 7] = [
    SummandKind::Cyclic(1),
    SummandKind::Cyclic(2),
    SummandKind::Cyclic(3),
    SummandKind::Cyclic(4),
    SummandKind::Pruefer,
    SummandKind::GenPruefer(1),
    SummandKind::GenPruefer(2),
];

/// Every descriptor with 1 to 4 summands from [`ULM_KINDS`], as multisets.
pub fn small_descriptors() -> Vec<GroupDescriptor> {
    fn rec(start: usize, left: usize, cur: &mut Vec<SummandKind>, out: &mut Vec<GroupDescriptor>) {
        if !cur.is_empty() {
            out.push(GroupDescriptor::plain(cur.clone()));
        }
        if left == 0 {
            return;
        }
        for (i, &k) in ULM_KINDS.iter().enumerate().skip(start) {
            cur.push(k);
            rec(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 4, &mut Vec::new(), &mut out);
    out
}

fn random_tags(r: &mut Rng8, n: usize) -> Vec<ActionTag> {
    let mut tags = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && r.gen_ratio(1, 3) {
            tags.push(ActionTag::Swap(i + 1));
            tags.push(ActionTag::Swap(i));
            i += 2;
        } else {
            tags.push(if r.gen_bool(0.5) {
                ActionTag::Fixed
            } else {
                ActionTag::Negated
            });
            i += 1;
        }
    }
    tags
}

/// Inputs to `build_fixed_tower`: an all-Prüfer source with an involution,
/// a divisible tower of length `depth + 2` in it, a tagged target and a
/// corestriction `(I + T)·C₀` whose image is σ-invariant.
pub struct FixedTowerInstance {
    pub source: GroupDescriptor,
    pub target: GroupDescriptor,
    pub cor: Vec<Vec<i64>>,
    pub tower: Tower,
}

pub fn fixed_tower_instance(r: &mut Rng8, depth: usize) -> FixedTowerInstance {
    let rs = r.gen_range(1..=3);
    let rt = r.gen_range(1..=4);
    let src_action = InvolutionSpec::Tags(random_tags(r, rs));
    let tgt_tags = random_tags(r, rt);
    let t = InvolutionSpec::Tags(tgt_tags.clone()).to_matrix(rt);
    let c0: Vec<Vec<i64>> = (0..rt)
        .map(|_| (0..rs).map(|_| r.gen_range(-3..=3)).collect())
        .collect();
    let cor: Vec<Vec<i64>> = (0..rt)
        .map(|i| {
            (0..rs)
                .map(|j| c0[i][j] + (0..rt).map(|k| t[i][k] * c0[k][j]).sum::<i64>())
                .collect()
        })
        .collect();
    let v: Vec<i64> = (0..rs).map(|_| r.gen_range(-20..=20)).collect();
    FixedTowerInstance {
        source: GroupDescriptor::new(vec![SummandKind::Pruefer; rs], Some(src_action)).expect("tags"),
        target: GroupDescriptor::new(vec![SummandKind::Pruefer; rt], Some(InvolutionSpec::Tags(tgt_tags)))
            .expect("tags"),
        cor,
        tower: Tower::over_vector(&v, depth + 2),
    }
}

/// A quotient model `C1^a ⊕ P^b → P^b` with an exponent-2 kernel, a point
/// `α` and a divisible tower of length `depth + 2` over `φ(α)`, so the
/// lifted tower reaches `depth`.
pub struct LiftInstance {
    pub model: QuotientModel,
    pub alpha: GroupElem,
    pub tower_down: Tower,
}

pub fn lift_instance(r: &mut Rng8, depth: usize) -> LiftInstance {
    loop {
        let a = r.gen_range(0..=2);
        let b = r.gen_range(1..=2);
        let mut kinds = vec![SummandKind::Cyclic(1); a];
        kinds.extend(vec![SummandKind::Pruefer; b]);
        let mut map: Vec<Vec<i64>> = (0..a).map(|_| (0..b).map(|_| r.gen_range(-3..=3)).collect()).collect();
        let block: Vec<Vec<i64>> = (0..b).map(|_| (0..b).map(|_| r.gen_range(-3..=3)).collect()).collect();
        let det = if b == 1 {
            block[0][0]
        } else {
            block[0][0] * block[1][1] - block[0][1] * block[1][0]
        };
        if det == 0 || (det % 4 == 0) {
            continue;
        }
        map.extend(block);
        let Ok(model) = QuotientModel::new(
            GroupDescriptor::plain(kinds.clone()),
            GroupDescriptor::plain(vec![SummandKind::Pruefer; b]),
            map,
        ) else {
            continue;
        };
        let coords = kinds
            .iter()
            .map(|k| match k {
                SummandKind::Cyclic(_) => Coord::Cyc(r.gen_range(0..2)),
                _ => Coord::Pru(Dyadic::new(r.gen_range(0i64..64), r.gen_range(0u32..6))),
            })
            .collect();
        let alpha = GroupElem::new(coords);
        let y = model.apply(&alpha).expect("valid element");
        let shift: Vec<i64> = (0..b).map(|_| r.gen_range(-8..=8)).collect();
        let elems = (0..=depth as u32 + 1)
            .map(|i| {
                let coords = y
                    .coords
                    .iter()
                    .zip(&shift)
                    .map(|(c, &s)| match c {
                        Coord::Pru(q) => {
                            // (q + s)/2^(i+1) for the representative q ∈ [0, 1)
                            let e = q.order_log2();
                            Coord::Pru(Dyadic::new(q.numer() + (BigInt::from(s) << e), e + i + 1))
                        }
                        _ => unreachable!("Prüfer codomain"),
                    })
                    .collect();
                GroupElem::new(coords)
            })
            .collect();
        return LiftInstance {
            model,
            alpha,
            tower_down: Tower::new(elems),
        };
    }
}
