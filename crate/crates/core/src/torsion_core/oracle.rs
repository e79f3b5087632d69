//! Height and Ulm oracle by truncation to a finite group.
//!
//! Each Prüfer summand becomes `Z/2^(3K)` and each `G<n>` is cut to its
//! sub-presentation on `e_1 .. e_K, x`. The finite group is put in Smith
//! form over `Z/2^E`, after which heights and Ulm invariants are read off
//! the cyclic decomposition. Truncated heights are interpreted as:
//!
//! | truncated height `h` | reported          |
//! |----------------------|-------------------|
//! | `h < K-2`            | `Finite(h)`       |
//! | `K-2 ≤ h < K`        | at least `K-2`    |
//! | `K ≤ h < 2K`         | `ω + (h-K)`       |
//! | `h ≥ 2K` or zero     | `∞`               |

use super::descriptor::{GroupDescriptor, SummandKind};
use super::group::{Coord, Group, GroupElem};
use super::ordinal::Ordinal;
use super::smith::{smith, Ring, Smith};
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: u32 = 24;

/// Largest truncation the `u128` Smith engine supports with a Prüfer
/// summand present (`3K ≤ 128`).
pub const MAX_TRUNCATION: u32 = 42;

/// The truncation level: `GZB_TRUNCATION` if set and valid, else the default.
pub fn truncation_level() -> u32 {
    std::env::var("GZB_TRUNCATION")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|k| (4..=MAX_TRUNCATION).contains(k))
        .unwrap_or(DEFAULT_TRUNCATION)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightBound {
    Exact(Ordinal),
    /// Only a lower bound is certified.
    AtLeast(Ordinal),
}

/// A descriptor group truncated at level `K`.
#[derive(Debug, Clone)]
pub struct Truncation {
    k: u32,
    summands: Vec<SummandKind>,
    offsets: Vec<usize>,
    smith: Smith,
    orders: Vec<u32>,
}

fn descriptor_floor(desc: &GroupDescriptor) -> u32 {
    desc.summands
        .iter()
        .map(|s| match *s {
            SummandKind::Cyclic(n) | SummandKind::GenPruefer(n) => n + 3,
            SummandKind::Pruefer => 4,
        })
        .max()
        .unwrap_or(4)
}

fn element_floor(x: &GroupElem) -> u32 {
    x.coords
        .iter()
        .map(|c| match c {
            Coord::Cyc(_) => 0,
            Coord::Pru(q) => q.order_log2(),
            Coord::Gen { a, .. } => a.keys().next_back().map_or(0, |k| k + 3),
        })
        .max()
        .unwrap_or(0)
}

impl Truncation {
    /// Truncates at `k`, raised as needed so every summand fits below the
    /// certification margin.
    pub fn new(desc: &GroupDescriptor, k: u32) -> Result<Self> {
        Truncation::build(desc, k.max(descriptor_floor(desc)))
    }

    /// Truncation adequate for all of `elems`.
    pub fn for_elements(desc: &GroupDescriptor, k: u32, elems: &[GroupElem]) -> Result<Self> {
        let floor = elems.iter().map(element_floor).max().unwrap_or(0);
        Truncation::build(desc, k.max(descriptor_floor(desc)).max(floor))
    }

    fn build(desc: &GroupDescriptor, k: u32) -> Result<Self> {
        let e = desc
            .summands
            .iter()
            .map(|s| match *s {
                SummandKind::Cyclic(n) => n,
                SummandKind::Pruefer => 3 * k,
                SummandKind::GenPruefer(n) => k + n,
            })
            .max()
            .unwrap_or(1)
            .max(1);
        if e > 128 {
            return Err(Error::OutOfRange(format!("truncation at K = {k} needs exponent 2^{e}")));
        }
        let ring = Ring::new(e);
        let mut offsets = Vec::new();
        let mut ngens = 0usize;
        for s in &desc.summands {
            offsets.push(ngens);
            ngens += match s {
                SummandKind::GenPruefer(_) => k as usize + 1,
                _ => 1,
            };
        }
        let pow = |j: u32| ring.red(if j >= 128 { 0 } else { 1u128 << j });
        let mut rels: Vec<Vec<u128>> = Vec::new();
        for (s, &off) in desc.summands.iter().zip(&offsets) {
            match *s {
                SummandKind::Cyclic(n) => {
                    let mut r = vec![0; ngens];
                    r[off] = pow(n);
                    rels.push(r);
                }
                SummandKind::Pruefer => {
                    let mut r = vec![0; ngens];
                    r[off] = pow(3 * k);
                    rels.push(r);
                }
                SummandKind::GenPruefer(n) => {
                    let x = off + k as usize;
                    for j in 1..=k {
                        let mut r = vec![0; ngens];
                        r[off + j as usize - 1] = pow(j);
                        r[x] = ring.from_i128(-1);
                        rels.push(r);
                    }
                    let mut r = vec![0; ngens];
                    r[x] = pow(n);
                    rels.push(r);
                }
            }
        }
        let smith = smith(&rels, e);
        let mut orders = smith.diag.clone();
        orders.resize(ngens, e);
        Ok(Truncation {
            k,
            summands: desc.summands.clone(),
            offsets,
            smith,
            orders,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Exponents `v_i` of the cyclic decomposition `⊕ Z/2^v_i`.
    pub fn cyclic_orders(&self) -> Vec<u32> {
        let mut o: Vec<u32> = self.orders.iter().copied().filter(|&v| v > 0).collect();
        o.sort_unstable();
        o
    }

    fn embed(&self, x: &GroupElem) -> Result<Vec<u128>> {
        if x.coords.len() != self.summands.len() {
            return Err(Error::DescriptorMismatch(
                "element does not match the truncation".into(),
            ));
        }
        let ring = self.smith.ring;
        let mut y = vec![0u128; self.smith.cols];
        for ((c, s), &off) in x.coords.iter().zip(&self.summands).zip(&self.offsets) {
            match (c, s) {
                (Coord::Cyc(r), SummandKind::Cyclic(_)) => y[off] = *r as u128,
                (Coord::Pru(q), SummandKind::Pruefer) => {
                    let v = q
                        .scaled_u128(3 * self.k)
                        .ok_or_else(|| Error::OutOfRange(format!("{q} has order beyond the truncation")))?;
                    y[off] = ring.red(v);
                }
                (Coord::Gen { a, t }, SummandKind::GenPruefer(_)) => {
                    for (&j, &v) in a {
                        if j > self.k {
                            return Err(Error::OutOfRange(format!("e_{j} beyond the truncation")));
                        }
                        y[off + j as usize - 1] = v as u128;
                    }
                    y[off + self.k as usize] = *t as u128;
                }
                _ => return Err(Error::DescriptorMismatch("coordinate kind differs from summand".into())),
            }
        }
        Ok(y)
    }

    /// Height in the truncated finite group; `None` for its zero element.
    pub fn raw_height(&self, x: &GroupElem) -> Result<Option<u32>> {
        let ring = self.smith.ring;
        let y = Smith::vec_mul(ring, &self.embed(x)?, &self.smith.q);
        Ok(y.iter()
            .zip(&self.orders)
            .filter_map(|(&c, &v)| {
                let m = if v >= 128 { c } else { c & ((1u128 << v) - 1) };
                (m != 0).then(|| m.trailing_zeros())
            })
            .min())
    }

    pub fn classify(&self, raw: Option<u32>) -> HeightBound {
        let k = self.k;
        match raw {
            None => HeightBound::Exact(Ordinal::Infinity),
            Some(h) if h + 2 < k => HeightBound::Exact(Ordinal::Finite(h)),
            Some(h) if h < k => HeightBound::AtLeast(Ordinal::Finite(k - 2)),
            Some(h) if h < 2 * k => HeightBound::Exact(Ordinal::OmegaPlus(h - k)),
            Some(_) => HeightBound::Exact(Ordinal::Infinity),
        }
    }

    pub fn height(&self, x: &GroupElem) -> Result<HeightBound> {
        Ok(self.classify(self.raw_height(x)?))
    }

    /// Ulm invariant read from the truncated group: the number of cyclic
    /// summands of order `2^(λ'+1)` where `λ'` is `λ` for finite `λ` and
    /// `K + j` for `λ = ω + j`.
    pub fn ulm(&self, lambda: Ordinal) -> Result<u64> {
        let level = match lambda {
            Ordinal::Finite(m) if m + 2 < self.k => m,
            Ordinal::OmegaPlus(j) if j + 1 < self.k => self.k + j,
            _ => {
                return Err(Error::OutOfRange(format!(
                    "U({lambda}) is not certified at K = {}",
                    self.k
                )))
            }
        };
        Ok(self.orders.iter().filter(|&&v| v == level + 1).count() as u64)
    }
}

/// Height of `x` computed in a truncation at level `k` (raised to fit `x`).
pub fn height_bruteforce(g: &Group, x: &GroupElem, k: u32) -> Result<HeightBound> {
    if k == 0 {
        return Err(Error::Precondition("truncation level must be at least 1".into()));
    }
    g.validate(x)?;
    Truncation::for_elements(g.descriptor(), k, std::slice::from_ref(x))?.height(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Dyadic;

    #[test]
    fn transfinite_top() {
        let g = Group::parse("G2").unwrap();
        let x = GroupElem::new(vec![Coord::gen_top(2)]);
        assert_eq!(
            height_bruteforce(&g, &x, 10).unwrap(),
            HeightBound::Exact(Ordinal::OmegaPlus(1))
        );
        let z = g.zero();
        for k in [1, 5, 24] {
            assert_eq!(
                height_bruteforce(&g, &z, k).unwrap(),
                HeightBound::Exact(Ordinal::Infinity)
            );
        }
    }

    #[test]
    fn cyclic_decomposition_of_truncated_gen() {
        let t = Truncation::new(&GroupDescriptor::plain(vec![SummandKind::GenPruefer(2)]), 6).unwrap();
        assert_eq!(t.cyclic_orders(), vec![1, 2, 3, 4, 5, 8]);
    }

    #[test]
    fn pruefer_elements_are_divisible() {
        let g = Group::parse("C1+P").unwrap();
        let x = GroupElem::new(vec![Coord::Cyc(0), Coord::Pru(Dyadic::new(5, 7))]);
        assert_eq!(
            height_bruteforce(&g, &x, 8).unwrap(),
            HeightBound::Exact(Ordinal::Infinity)
        );
    }

    #[test]
    fn environment_override_is_bounded() {
        assert!((4..=MAX_TRUNCATION).contains(&truncation_level()));
    }
}
