use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::descriptor::{parse_descriptor, ActionTag, GroupDescriptor, InvolutionSpec, SummandKind};
use super::ordinal::Ordinal;
use crate::error::{Error, Result};
use crate::exact_algebra::Dyadic;

/// Largest `k` for which a generalized Prüfer coordinate may use `e_k`.
pub const MAX_GEN_INDEX: u32 = 62;

/// Refuse to materialize halving sets larger than this.
const MAX_HALVES: usize = 1 << 20;

/// One summand's coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coord {
    /// Residue mod `2^n`.
    Cyc(u64),
    Pru(Dyadic),
    /// `Σ a_k e_k + t x` with `0 < a_k < 2^k` (zero entries omitted) and
    /// `t` mod `2^n`.
    Gen {
        a: BTreeMap<u32, u64>,
        t: u64,
    },
}

impl Coord {
    pub fn is_zero(&self) -> bool {
        match self {
            Coord::Cyc(r) => *r == 0,
            Coord::Pru(q) => q.is_zero(),
            Coord::Gen { a, t } => a.is_empty() && *t == 0,
        }
    }

    pub fn zero_for(kind: SummandKind) -> Coord {
        match kind {
            SummandKind::Cyclic(_) => Coord::Cyc(0),
            SummandKind::Pruefer => Coord::Pru(Dyadic::zero()),
            SummandKind::GenPruefer(_) => Coord::Gen {
                a: BTreeMap::new(),
                t: 0,
            },
        }
    }

    /// The generator `x` of the `p^ω`-part of a generalized Prüfer summand.
    pub fn gen_top(t: u64) -> Coord {
        Coord::Gen { a: BTreeMap::new(), t }
    }

    /// `a · e_k` in a generalized Prüfer summand of top exponent `n`,
    /// normalized.
    pub fn gen_e(n: u32, k: u32, a: i128) -> Coord {
        gen_normalize(n, std::iter::once((k, a)), 0)
    }
}

fn pow2(k: u32) -> i128 {
    1i128 << k
}

/// Folds raw `Σ a_k e_k + t x` into normal form.
fn gen_normalize(n: u32, raw: impl IntoIterator<Item = (u32, i128)>, t: i128) -> Coord {
    let top = pow2(n);
    let mut t = t.rem_euclid(top);
    let mut a = BTreeMap::new();
    for (k, v) in raw {
        let m = pow2(k);
        let r = v.rem_euclid(m);
        t = (t + v.div_euclid(m).rem_euclid(top)).rem_euclid(top);
        if r != 0 {
            let e = a.entry(k).or_insert(0u64);
            let s = *e as i128 + r;
            if s >= m {
                t = (t + 1).rem_euclid(top);
            }
            *e = (s % m) as u64;
            if *e == 0 {
                a.remove(&k);
            }
        }
    }
    Coord::Gen { a, t: t as u64 }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElem {
    pub coords: Vec<Coord>,
}

impl GroupElem {
    pub fn new(coords: Vec<Coord>) -> Self {
        GroupElem { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Coord::is_zero)
    }

    /// All-Prüfer element with the given coordinates.
    pub fn pruefer(qs: Vec<Dyadic>) -> Self {
        GroupElem {
            coords: qs.into_iter().map(Coord::Pru).collect(),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Cyc(r) => write!(f, "{r}"),
            Coord::Pru(q) => write!(f, "{q}"),
            Coord::Gen { a, t } => {
                let mut terms: Vec<String> = a.iter().map(|(k, v)| format!("{v}e{k}")).collect();
                if *t != 0 {
                    terms.push(format!("{t}x"));
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A descriptor group together with its element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Group {
    desc: GroupDescriptor,
}

impl Group {
    pub fn new(desc: GroupDescriptor) -> Self {
        Group { desc }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Group::new(parse_descriptor(s)?))
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.desc
    }

    pub fn summands(&self) -> &[SummandKind] {
        &self.desc.summands
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem {
            coords: self.desc.summands.iter().map(|&k| Coord::zero_for(k)).collect(),
        }
    }

    pub fn elem(&self, coords: Vec<Coord>) -> Result<GroupElem> {
        let x = GroupElem { coords };
        self.validate(&x)?;
        Ok(x)
    }

    pub fn validate(&self, x: &GroupElem) -> Result<()> {
        if x.coords.len() != self.desc.summands.len() {
            return Err(Error::DescriptorMismatch(format!(
                "{} coordinates for {} summands",
                x.coords.len(),
                self.desc.summands.len()
            )));
        }
        for (i, (c, k)) in x.coords.iter().zip(&self.desc.summands).enumerate() {
            let ok = match (c, *k) {
                (Coord::Cyc(r), SummandKind::Cyclic(n)) => *r < 1u64 << n,
                (Coord::Pru(_), SummandKind::Pruefer) => true,
                (Coord::Gen { a, t }, SummandKind::GenPruefer(n)) => {
                    *t < 1u64 << n
                        && a.iter()
                            .all(|(&k, &v)| (1..=MAX_GEN_INDEX).contains(&k) && v > 0 && v < 1u64 << k)
                }
                _ => false,
            };
            if !ok {
                return Err(Error::DescriptorMismatch(format!(
                    "coordinate {i} ({c}) does not fit summand {k}"
                )));
            }
        }
        Ok(())
    }

    fn check2(&self, x: &GroupElem, y: &GroupElem) -> Result<()> {
        self.validate(x)?;
        self.validate(y)
    }

    pub fn add(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem> {
        self.check2(x, y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        let coords = self
            .desc
            .summands
            .iter()
            .zip(x.coords.iter().zip(&y.coords))
            .map(|(k, (a, b))| match (k, a, b) {
                (SummandKind::Cyclic(n), Coord::Cyc(r), Coord::Cyc(s)) => {
                    Coord::Cyc(((*r as i128 + *s as i128).rem_euclid(pow2(*n))) as u64)
                }
                (SummandKind::Pruefer, Coord::Pru(p), Coord::Pru(q)) => Coord::Pru(p + q),
                (SummandKind::GenPruefer(n), Coord::Gen { a: a1, t: t1 }, Coord::Gen { a: a2, t: t2 }) => {
                    let raw = a1.iter().chain(a2).map(|(&k, &v)| (k, v as i128));
                    gen_normalize(*n, raw, *t1 as i128 + *t2 as i128)
                }
                _ => unreachable!("validated coordinates"),
            })
            .collect();
        GroupElem { coords }
    }

    pub fn scale(&self, x: &GroupElem, m: i64) -> Result<GroupElem> {
        self.validate(x)?;
        Ok(self.scale_unchecked(x, m))
    }

    pub(crate) fn scale_unchecked(&self, x: &GroupElem, m: i64) -> GroupElem {
        let m128 = m as i128;
        let coords = self
            .desc
            .summands
            .iter()
            .zip(&x.coords)
            .map(|(k, c)| match (k, c) {
                (SummandKind::Cyclic(n), Coord::Cyc(r)) => {
                    let md = m128.rem_euclid(pow2(*n));
                    Coord::Cyc(((md * *r as i128).rem_euclid(pow2(*n))) as u64)
                }
                (SummandKind::Pruefer, Coord::Pru(q)) => Coord::Pru(q.mul_int(&BigInt::from(m))),
                (SummandKind::GenPruefer(n), Coord::Gen { a, t }) => {
                    let raw = a.iter().map(|(&k, &v)| (k, m128 * v as i128));
                    let tm = m128.rem_euclid(pow2(*n)) * *t as i128;
                    gen_normalize(*n, raw, tm)
                }
                _ => unreachable!("validated coordinates"),
            })
            .collect();
        GroupElem { coords }
    }

    pub fn neg(&self, x: &GroupElem) -> Result<GroupElem> {
        self.scale(x, -1)
    }

    pub fn sub(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem> {
        self.check2(x, y)?;
        Ok(self.add_unchecked(x, &self.scale_unchecked(y, -1)))
    }

    pub fn double(&self, x: &GroupElem) -> Result<GroupElem> {
        self.scale(x, 2)
    }

    /// `2^k x`.
    pub fn mul_pow2(&self, x: &GroupElem, k: u32) -> Result<GroupElem> {
        self.validate(x)?;
        let mut y = x.clone();
        for _ in 0..k {
            if y.is_zero() {
                break;
            }
            y = self.scale_unchecked(&y, 2);
        }
        Ok(y)
    }

    /// Applies the descriptor's involution.
    pub fn act(&self, x: &GroupElem) -> Result<GroupElem> {
        self.validate(x)?;
        match &self.desc.action {
            None => Err(Error::Precondition("descriptor carries no action".into())),
            Some(InvolutionSpec::Tags(tags)) => {
                let coords = tags
                    .iter()
                    .enumerate()
                    .map(|(i, t)| match *t {
                        ActionTag::Fixed => x.coords[i].clone(),
                        ActionTag::Negated => {
                            let single = Group::new(GroupDescriptor::plain(vec![self.desc.summands[i]]));
                            let c = GroupElem {
                                coords: vec![x.coords[i].clone()],
                            };
                            single.scale_unchecked(&c, -1).coords.pop().expect("one coordinate")
                        }
                        ActionTag::Swap(j) => x.coords[j].clone(),
                    })
                    .collect();
                Ok(GroupElem { coords })
            }
            Some(InvolutionSpec::Matrix(m)) => {
                let coords = m
                    .iter()
                    .map(|row| {
                        let s: Dyadic = row
                            .iter()
                            .zip(&x.coords)
                            .map(|(&mij, c)| match c {
                                Coord::Pru(q) => q.mul_int(&BigInt::from(mij)),
                                _ => unreachable!("matrix actions are on all-Prüfer groups"),
                            })
                            .sum();
                        Coord::Pru(s)
                    })
                    .collect();
                Ok(GroupElem { coords })
            }
        }
    }

    /// Height, with `∞` for the zero element and for divisible elements.
    pub fn height(&self, x: &GroupElem) -> Result<Ordinal> {
        self.validate(x)?;
        Ok(x.coords.iter().map(coord_height).min().unwrap_or(Ordinal::Infinity))
    }

    /// All `y` with `2y = x`. For generalized Prüfer summands the set is
    /// infinite (any `2^(k-1) e_k` may be added together with a fold into
    /// the top); only halves supported on `e_1 .. e_{s+1}` are listed,
    /// where `s` is the largest index in the support of `x`.
    pub fn halves(&self, x: &GroupElem) -> Result<Vec<GroupElem>> {
        self.halves_within(x, None)
    }

    /// As [`Group::halves`] with an explicit `e_k` window `1..=window`
    /// (at least the support of `x`).
    pub fn halves_within(&self, x: &GroupElem, window: Option<u32>) -> Result<Vec<GroupElem>> {
        self.validate(x)?;
        let mut per: Vec<Vec<Coord>> = Vec::with_capacity(x.coords.len());
        for (k, c) in self.desc.summands.iter().zip(&x.coords) {
            let hs = match (k, c) {
                (SummandKind::Cyclic(n), Coord::Cyc(r)) => {
                    if r % 2 == 1 {
                        vec![]
                    } else {
                        vec![Coord::Cyc(r / 2), Coord::Cyc(r / 2 + (1u64 << (n - 1)))]
                    }
                }
                (SummandKind::Pruefer, Coord::Pru(q)) => {
                    let h = q.halve();
                    vec![Coord::Pru(h.clone()), Coord::Pru(h + Dyadic::half())]
                }
                (SummandKind::GenPruefer(n), Coord::Gen { a, t }) => {
                    let support = a.keys().next_back().copied().unwrap_or(0);
                    let w = window.unwrap_or(support + 1).max(support);
                    gen_halves(*n, a, *t, w)?
                }
                _ => unreachable!("validated coordinates"),
            };
            if hs.is_empty() {
                return Ok(vec![]);
            }
            per.push(hs);
        }
        let total = per
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.len()).filter(|&t| t <= MAX_HALVES));
        if total.is_none() {
            return Err(Error::OutOfRange("halving set too large to list".into()));
        }
        let mut out = vec![Vec::new()];
        for hs in per {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    hs.iter().map(move |h| {
                        let mut p = prefix.clone();
                        p.push(h.clone());
                        p
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(GroupElem::new).collect())
    }

    /// Elements annihilated by `2^level`, with generalized Prüfer
    /// coordinates restricted to `e_1 .. e_window`.
    pub fn torsion_elements(&self, level: u32, window: u32) -> Result<Vec<GroupElem>> {
        let mut per = Vec::new();
        for &k in &self.desc.summands {
            per.push(summand_torsion(k, level, window)?);
        }
        let total = per
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.len()).filter(|&t| t <= MAX_HALVES));
        if total.is_none() {
            return Err(Error::OutOfRange("torsion window too large to list".into()));
        }
        let mut out = vec![Vec::new()];
        for cs in per {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    cs.iter().map(move |c| {
                        let mut p: Vec<Coord> = prefix.clone();
                        p.push(c.clone());
                        p
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(GroupElem::new).collect())
    }
}

/// Per-summand elements annihilated by `2^level`.
pub fn summand_torsion(kind: SummandKind, level: u32, window: u32) -> Result<Vec<Coord>> {
    Ok(match kind {
        SummandKind::Cyclic(n) => {
            let step = 1u64 << n.saturating_sub(level);
            (0..1u64 << n).step_by(step as usize).map(Coord::Cyc).collect()
        }
        SummandKind::Pruefer => {
            if level > 20 {
                return Err(Error::OutOfRange("Prüfer torsion level above 20".into()));
            }
            (0..1u64 << level).map(|j| Coord::Pru(Dyadic::new(j, level))).collect()
        }
        SummandKind::GenPruefer(n) => {
            if window > 6 || n > 10 {
                return Err(Error::OutOfRange("generalized Prüfer window above e_6".into()));
            }
            let single = Group::new(GroupDescriptor::plain(vec![kind]));
            let mut all = vec![Coord::zero_for(kind)];
            for k in 1..=window {
                all = all
                    .into_iter()
                    .flat_map(|c| (0..1i128 << k).map(move |v| (c.clone(), v)))
                    .map(|(c, v)| {
                        let e = GroupElem::new(vec![Coord::gen_e(n, k, v)]);
                        single
                            .add_unchecked(&GroupElem::new(vec![c]), &e)
                            .coords
                            .pop()
                            .expect("one")
                    })
                    .collect();
            }
            let mut out = Vec::new();
            for c in all {
                for t in 0..1u64 << n {
                    let e = GroupElem::new(vec![c.clone()]);
                    let y = single.add_unchecked(&e, &GroupElem::new(vec![Coord::gen_top(t)]));
                    if single.mul_pow2(&y, level).expect("valid").is_zero() {
                        out.extend(y.coords);
                    }
                }
            }
            out
        }
    })
}

fn gen_halves(n: u32, a: &BTreeMap<u32, u64>, t: u64, window: u32) -> Result<Vec<Coord>> {
    if a.values().any(|v| v % 2 == 1) {
        return Ok(vec![]);
    }
    if window > 20 {
        return Err(Error::OutOfRange("generalized Prüfer halving window above 20".into()));
    }
    if window > MAX_GEN_INDEX {
        return Err(Error::OutOfRange("generalized Prüfer index too large".into()));
    }
    let top = 1u64 << n;
    let mut out = Vec::new();
    for mask in 0u64..1u64 << window {
        let c = mask.count_ones() as u64;
        // 2s + |C| ≡ t mod 2^n
        let rest = (t as i128 - c as i128).rem_euclid(top as i128) as u64;
        if rest % 2 == 1 {
            continue;
        }
        let raw: Vec<(u32, i128)> = (1..=window)
            .map(|k| {
                let half = a.get(&k).copied().unwrap_or(0) / 2;
                let carry = if mask >> (k - 1) & 1 == 1 { 1u64 << (k - 1) } else { 0 };
                (k, (half + carry) as i128)
            })
            .collect();
        for s in [rest / 2, rest / 2 + top / 2] {
            let coord = gen_normalize(n, raw.iter().copied(), s as i128);
            if !out.contains(&coord) {
                out.push(coord);
            }
        }
    }
    Ok(out)
}

fn v2(x: u64) -> u32 {
    x.trailing_zeros()
}

fn coord_height(c: &Coord) -> Ordinal {
    match c {
        Coord::Cyc(0) => Ordinal::Infinity,
        Coord::Cyc(r) => Ordinal::Finite(v2(*r)),
        Coord::Pru(_) => Ordinal::Infinity,
        Coord::Gen { a, t } => {
            if let Some(h) = a.values().map(|&v| v2(v)).min() {
                Ordinal::Finite(h)
            } else if *t == 0 {
                Ordinal::Infinity
            } else {
                Ordinal::OmegaPlus(v2(*t))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Group {
        Group::parse(s).unwrap()
    }

    #[test]
    fn spec_arithmetic() {
        let z8 = g("C3");
        let five = z8.elem(vec![Coord::Cyc(5)]).unwrap();
        assert_eq!(z8.add(&five, &five).unwrap().coords, vec![Coord::Cyc(2)]);

        let p = g("P");
        let x = GroupElem::pruefer(vec![Dyadic::parse("3/4").unwrap()]);
        let y = GroupElem::pruefer(vec![Dyadic::half()]);
        assert_eq!(
            p.add(&x, &y).unwrap(),
            GroupElem::pruefer(vec![Dyadic::parse("1/4").unwrap()])
        );

        let g1 = g("G1");
        let e2 = GroupElem::new(vec![Coord::gen_e(1, 2, 2)]);
        assert_eq!(g1.add(&e2, &e2).unwrap().coords, vec![Coord::gen_top(1)]);
    }

    #[test]
    fn spec_halves() {
        let z4 = g("C2");
        let mut h = z4.halves(&z4.zero()).unwrap();
        h.sort_by_key(|e| e.to_string());
        assert_eq!(
            h,
            vec![GroupElem::new(vec![Coord::Cyc(0)]), GroupElem::new(vec![Coord::Cyc(2)])]
        );
        assert!(z4.halves(&GroupElem::new(vec![Coord::Cyc(1)])).unwrap().is_empty());
        let p = g("P");
        let hs = p.halves(&GroupElem::pruefer(vec![Dyadic::half()])).unwrap();
        assert_eq!(hs.len(), 2);
        for q in ["1/4", "3/4"] {
            assert!(hs.contains(&GroupElem::pruefer(vec![Dyadic::parse(q).unwrap()])));
        }
    }

    #[test]
    fn spec_heights() {
        let z8 = g("C3");
        assert_eq!(
            z8.height(&GroupElem::new(vec![Coord::Cyc(4)])).unwrap(),
            Ordinal::Finite(2)
        );
        let g1 = g("G1");
        assert_eq!(
            g1.height(&GroupElem::new(vec![Coord::gen_top(1)])).unwrap(),
            Ordinal::OMEGA
        );
        let mixed = g("C3+P");
        let x = GroupElem::new(vec![Coord::Cyc(4), Coord::Pru(Dyadic::half())]);
        assert_eq!(mixed.height(&x).unwrap(), Ordinal::Finite(2));
        assert_eq!(mixed.height(&mixed.zero()).unwrap(), Ordinal::Infinity);
        let g2 = g("G2");
        assert_eq!(
            g2.height(&GroupElem::new(vec![Coord::gen_top(2)])).unwrap(),
            Ordinal::OmegaPlus(1)
        );
    }

    #[test]
    fn halves_double_back() {
        let gr = g("C3+P+G2");
        let x = GroupElem::new(vec![
            Coord::Cyc(6),
            Coord::Pru(Dyadic::parse("3/8").unwrap()),
            Coord::gen_e(2, 3, 4),
        ]);
        let hs = gr.halves(&x).unwrap();
        assert!(!hs.is_empty());
        for h in &hs {
            assert_eq!(gr.double(h).unwrap(), x);
        }
    }

    #[test]
    fn negation_folds_into_top() {
        let g1 = g("G2");
        let e1 = GroupElem::new(vec![Coord::gen_e(2, 1, 1)]);
        let m = g1.neg(&e1).unwrap();
        assert!(g1.add(&e1, &m).unwrap().is_zero());
        assert_eq!(
            m.coords,
            vec![Coord::Gen {
                a: BTreeMap::from([(1, 1)]),
                t: 3
            }]
        );
    }

    #[test]
    fn action_tags_and_matrix() {
        let gr = g("C2+P+P | neg,swap(1,2)");
        let x = GroupElem::new(vec![
            Coord::Cyc(1),
            Coord::Pru(Dyadic::half()),
            Coord::Pru(Dyadic::zero()),
        ]);
        let y = gr.act(&x).unwrap();
        assert_eq!(
            y.coords,
            vec![Coord::Cyc(3), Coord::Pru(Dyadic::zero()), Coord::Pru(Dyadic::half())]
        );
        assert_eq!(gr.act(&y).unwrap(), x);
        let m = g("P+P | matrix [[0,1],[1,0]]");
        let q = GroupElem::pruefer(vec![Dyadic::parse("1/4").unwrap(), Dyadic::zero()]);
        assert_eq!(
            m.act(&q).unwrap(),
            GroupElem::pruefer(vec![Dyadic::zero(), Dyadic::parse("1/4").unwrap()])
        );
    }

    #[test]
    fn torsion_enumeration_counts() {
        assert_eq!(g("C1+C3").torsion_elements(2, 0).unwrap().len(), 2 * 4);
        assert_eq!(g("P").torsion_elements(3, 0).unwrap().len(), 8);
        for y in g("G1").torsion_elements(2, 2).unwrap() {
            assert!(g("G1").mul_pow2(&y, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn rejects_mismatched_elements() {
        let gr = g("C2+P");
        assert!(gr.add(&gr.zero(), &GroupElem::new(vec![Coord::Cyc(0)])).is_err());
        assert!(gr.elem(vec![Coord::Cyc(4), Coord::Pru(Dyadic::zero())]).is_err());
    }
}
