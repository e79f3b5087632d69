//! Splitting `(Q₂/Z₂)^r` with an involution into fixed, negated and
//! swapped divisible parts.
//!
//! Works on the lattice `Z^r` with `M`: `L⁺ = ker(M - 1)` and
//! `L⁻ = ker(M + 1)` (both 2-saturated). Vectors `w` are taken from the
//! standard basis in input order whenever `(1 - M)w` is new modulo
//! `2L⁻`; the rest of `L⁻` and `L⁺` is completed modulo 2. The resulting
//! basis `[i… | n… | w…, Mw…]` has odd determinant, so it is a
//! `Z₂`-basis and its towers `b / 2^(j+1)` split the group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::descriptor::{matrix_is_involution, GroupDescriptor, InvolutionSpec, SummandKind};
use super::group::{Group, GroupElem};
use super::smith::{smith, Ring};
use super::tower::{verify_tower, Tower};
use crate::error::{Error, Result};
use crate::exact_algebra::{Dyadic, Rational};

pub const DEFAULT_TOWER_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InpDecomposition {
    pub matrix: Vec<Vec<i64>>,
    pub fixed: Vec<Vec<i64>>,
    pub negated: Vec<Vec<i64>>,
    /// `(w, Mw)`.
    pub pairs: Vec<(Vec<i64>, Vec<i64>)>,
    pub depth: usize,
}

type IVec = Vec<BigInt>;

/// Integer basis of the rational kernel of `a`.
fn kernel(a: &[Vec<i64>]) -> Vec<IVec> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..cols {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let iv: IVec = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let g = iv.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        out.push(iv.into_iter().map(|x| x / &g).collect());
    }
    out
}

fn parity(v: &[BigInt]) -> u64 {
    v.iter()
        .enumerate()
        .fold(0u64, |acc, (i, x)| acc | (u64::from(x.is_odd()) << i))
}

/// Incremental row echelon form over the 2-element field.
#[derive(Default)]
struct F2Span {
    rows: Vec<(u64, u64)>, // (reduced vector, combination of inserted indices)
    count: usize,
}

impl F2Span {
    /// Returns the dependency (as a bitmask of insertion indices) if `v`
    /// is already spanned, else records `v`.
    fn insert(&mut self, v: u64) -> Option<u64> {
        let mut v = v;
        let mut combo = 1u64 << self.count;
        for &(r, c) in &self.rows {
            let lead = 63 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        self.count += 1;
        if v == 0 {
            Some(combo)
        } else {
            self.rows.push((v, combo));
            self.rows.sort_by_key(|r| std::cmp::Reverse(r.0));
            None
        }
    }
}

/// Replaces the basis by one of the 2-saturation of its span.
fn saturate2(mut basis: Vec<IVec>) -> Vec<IVec> {
    'outer: loop {
        let mut span = F2Span::default();
        for (idx, b) in basis.iter().enumerate() {
            if let Some(combo) = span.insert(parity(b)) {
                let members: Vec<usize> = (0..=idx).filter(|&i| combo >> i & 1 == 1).collect();
                let n = basis[0].len();
                let mut sum = vec![BigInt::zero(); n];
                for &i in &members {
                    for (s, x) in sum.iter_mut().zip(&basis[i]) {
                        *s += x;
                    }
                }
                let half: IVec = sum.into_iter().map(|x| x / 2).collect();
                basis[idx] = half;
                continue 'outer;
            }
        }
        return basis;
    }
}

/// Coordinates of `v` in `basis` modulo 2 (the basis spans a 2-saturated
/// lattice containing `v`).
fn coords_mod2(basis: &[IVec], v: &[BigInt]) -> u64 {
    let n = v.len();
    let k = basis.len();
    // Solve Σ c_i b_i = v over Q by elimination on the augmented system.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = basis.iter().map(|b| Rational::from_integer(b[r].clone())).collect();
            row.push(Rational::from_integer(v[r].clone()));
            row
        })
        .collect();
    let mut piv = vec![usize::MAX; k];
    let mut row = 0;
    for col in 0..k {
        let pr = (row..n).find(|&i| !m[i][col].is_zero()).expect("independent basis");
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=k {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        piv[col] = row;
        row += 1;
    }
    (0..k).fold(0u64, |acc, c| {
        let q = &m[piv[c]][k];
        debug_assert!(q.denom().is_odd());
        acc | (u64::from(q.numer().is_odd()) << c)
    })
}

fn mat_vec(m: &[Vec<i64>], v: &[BigInt]) -> IVec {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(&a, x)| BigInt::from(a) * x).sum())
        .collect()
}

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::OutOfRange("basis entry exceeds 64 bits".into()))
        })
        .collect()
}

/// Decomposes `(Q₂/Z₂)^r` under the involution `M` (acting on column
/// vectors) into `I ⊕ N ⊕ P`.
pub fn inp_decompose(m: &[Vec<i64>], depth: usize) -> Result<InpDecomposition> {
    let r = m.len();
    if r == 0 || r > 63 {
        return Err(Error::OutOfRange(format!("rank {r} outside 1..=63")));
    }
    if !matrix_is_involution(m) {
        return Err(Error::NotInvolution("M² ≠ I over the integers".into()));
    }
    let shifted = |s: i64| -> Vec<Vec<i64>> {
        (0..r)
            .map(|i| (0..r).map(|j| m[i][j] + if i == j { s } else { 0 }).collect())
            .collect()
    };
    let plus = saturate2(kernel(&shifted(-1)));
    let minus = saturate2(kernel(&shifted(1)));
    let one_minus: Vec<Vec<i64>> = shifted(-1).iter().map(|row| row.iter().map(|x| -x).collect()).collect();
    let one_plus = shifted(1);

    let mut w_span = F2Span::default();
    let mut ws: Vec<IVec> = Vec::new();
    for k in 0..r {
        let mut e = vec![BigInt::zero(); r];
        e[k] = BigInt::one();
        let img = mat_vec(&one_minus, &e);
        if w_span.insert(coords_mod2(&minus, &img)).is_none() {
            ws.push(e);
        }
    }
    let complete = |base: &[IVec], seeds: Vec<u64>| -> Vec<IVec> {
        let mut span = F2Span::default();
        for s in seeds {
            span.insert(s);
        }
        base.iter()
            .enumerate()
            .filter(|(i, _)| span.insert(1u64 << i).is_none())
            .map(|(_, b)| b.clone())
            .collect()
    };
    let negated = complete(
        &minus,
        ws.iter()
            .map(|w| coords_mod2(&minus, &mat_vec(&one_minus, w)))
            .collect(),
    );
    let fixed = complete(
        &plus,
        ws.iter().map(|w| coords_mod2(&plus, &mat_vec(&one_plus, w))).collect(),
    );
    let pairs = ws
        .iter()
        .map(|w| Ok((to_i64(w)?, to_i64(&mat_vec(m, w))?)))
        .collect::<Result<Vec<_>>>()?;
    let out = InpDecomposition {
        matrix: m.to_vec(),
        fixed: fixed.iter().map(|v| to_i64(v)).collect::<Result<_>>()?,
        negated: negated.iter().map(|v| to_i64(v)).collect::<Result<_>>()?,
        pairs,
        depth,
    };
    if !out.basis_is_unit(1) {
        return Err(Error::Postcondition("chosen basis is not a 2-adic basis".into()));
    }
    Ok(out)
}

impl InpDecomposition {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn group(&self) -> Group {
        Group::new(
            GroupDescriptor::new(
                vec![SummandKind::Pruefer; self.rank()],
                Some(InvolutionSpec::Matrix(self.matrix.clone())),
            )
            .expect("validated involution"),
        )
    }

    /// Basis vectors ordered `I`, `N`, then `w, Mw` per pair.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        let mut b: Vec<Vec<i64>> = self.fixed.iter().chain(&self.negated).cloned().collect();
        for (w, mw) in &self.pairs {
            b.push(w.clone());
            b.push(mw.clone());
        }
        b
    }

    pub fn fixed_towers(&self) -> Vec<Tower> {
        self.fixed.iter().map(|v| Tower::over_vector(v, self.depth)).collect()
    }

    pub fn negated_towers(&self) -> Vec<Tower> {
        self.negated.iter().map(|v| Tower::over_vector(v, self.depth)).collect()
    }

    pub fn pair_towers(&self) -> Vec<(Tower, Tower)> {
        self.pairs
            .iter()
            .map(|(w, mw)| (Tower::over_vector(w, self.depth), Tower::over_vector(mw, self.depth)))
            .collect()
    }

    /// Whether the basis matrix is invertible mod `2^k`, i.e. the level
    /// `k-1` tower entries form a basis of the `2^k`-torsion.
    fn basis_is_unit(&self, k: u32) -> bool {
        let ring = Ring::new(k);
        let b: Vec<Vec<u128>> = self
            .basis()
            .iter()
            .map(|v| v.iter().map(|&x| ring.from_i128(x as i128)).collect())
            .collect();
        b.len() == self.rank() && smith(&b, k).diag.iter().all(|&v| v == 0)
    }

    /// Checks the action laws on every tower entry, the tower law, and that
    /// the parts are independent and span the `2^k`-torsion. For small
    /// `r·k` the span is also enumerated element by element.
    pub fn verify(&self, k: u32) -> Result<()> {
        let g = self.group();
        let fail = |what: &str| Err(Error::Postcondition(what.to_string()));
        for t in self.fixed_towers() {
            if !verify_tower(&g, &t, self.depth - 1) {
                return fail("I tower law");
            }
            for a in &t.elems {
                if g.act(a)? != *a {
                    return fail("σ does not fix I");
                }
            }
        }
        for t in self.negated_towers() {
            if !verify_tower(&g, &t, self.depth - 1) {
                return fail("N tower law");
            }
            for a in &t.elems {
                if g.act(a)? != g.neg(a)? {
                    return fail("σ does not negate N");
                }
            }
        }
        for (t, s) in self.pair_towers() {
            if !verify_tower(&g, &t, self.depth - 1) || !verify_tower(&g, &s, self.depth - 1) {
                return fail("P tower law");
            }
            for (a, b) in t.elems.iter().zip(&s.elems) {
                if g.act(a)? != *b || g.act(b)? != *a {
                    return fail("σ does not swap a P pair");
                }
            }
        }
        if !(1..=128).contains(&k) || !self.basis_is_unit(k) {
            return fail("parts are not direct and exhaustive on the 2^k-torsion");
        }
        let r = self.rank();
        if r as u32 * k <= 12 {
            let basis = self.basis();
            let size = 1usize << (r as u32 * k);
            let mut seen = std::collections::HashSet::with_capacity(size);
            for code in 0..size {
                let coeffs: Vec<i64> = (0..r)
                    .map(|i| ((code >> (i as u32 * k)) & ((1 << k) - 1)) as i64)
                    .collect();
                let elem: Vec<Dyadic> = (0..r)
                    .map(|row| {
                        let s: i64 = basis.iter().zip(&coeffs).map(|(b, c)| b[row] * c).sum();
                        Dyadic::new(s, k)
                    })
                    .collect();
                seen.insert(GroupElem::pruefer(elem));
            }
            if seen.len() != size {
                return fail("enumerated span misses part of the 2^k-torsion");
            }
        }
        Ok(())
    }

    pub fn summary(&self) -> (usize, usize, usize) {
        (self.fixed.len(), self.negated.len(), self.pairs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let id = inp_decompose(&[vec![1, 0], vec![0, 1]], 8).unwrap();
        assert_eq!(id.summary(), (2, 0, 0));
        let neg = inp_decompose(&[vec![-1, 0], vec![0, -1]], 8).unwrap();
        assert_eq!(neg.summary(), (0, 2, 0));
        let swap = inp_decompose(&[vec![0, 1], vec![1, 0]], 8).unwrap();
        assert_eq!(swap.summary(), (0, 0, 1));
        for d in [id, neg, swap] {
            d.verify(10).unwrap();
            d.verify(4).unwrap();
        }
    }

    #[test]
    fn mixed_lattice() {
        // Fixes e0, sends e1 to e0 - e1: I ⊕ N over Q but not over Z₂.
        let m = vec![vec![1, 1], vec![0, -1]];
        let d = inp_decompose(&m, 10).unwrap();
        assert_eq!(d.summary(), (0, 0, 1));
        d.verify(10).unwrap();
    }

    #[test]
    fn rejects_non_involution() {
        assert!(matches!(
            inp_decompose(&[vec![1, 1], vec![0, 1]], 4),
            Err(Error::NotInvolution(_))
        ));
    }

    #[test]
    fn saturation_reaches_odd_index() {
        let b = |x: i64, y: i64| vec![BigInt::from(x), BigInt::from(y)];
        let k = saturate2(vec![b(2, 2), b(0, 4)]);
        let det = &k[0][0] * &k[1][1] - &k[0][1] * &k[1][0];
        assert!(det.is_odd());
    }
}
