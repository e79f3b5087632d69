//! Smith normal form over `Z/2^E` for `E ≤ 128`.
//!
//! Entries are `u128` reduced mod `2^E`; wrapping arithmetic followed by
//! masking is exact because `2^E` divides `2^128`.

pub type Mat = Vec<Vec<u128>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ring {
    pub e: u32,
}

impl Ring {
    pub fn new(e: u32) -> Self {
        assert!((1..=128).contains(&e), "exponent {e} outside 1..=128");
        Ring { e }
    }

    pub fn mask(self) -> u128 {
        if self.e == 128 {
            u128::MAX
        } else {
            (1u128 << self.e) - 1
        }
    }

    pub fn red(self, x: u128) -> u128 {
        x & self.mask()
    }

    pub fn from_i128(self, x: i128) -> u128 {
        self.red(x as u128)
    }

    pub fn add(self, a: u128, b: u128) -> u128 {
        self.red(a.wrapping_add(b))
    }

    pub fn sub(self, a: u128, b: u128) -> u128 {
        self.red(a.wrapping_sub(b))
    }

    pub fn mul(self, a: u128, b: u128) -> u128 {
        self.red(a.wrapping_mul(b))
    }

    /// 2-adic valuation, with `E` for zero.
    pub fn val(self, x: u128) -> u32 {
        let x = self.red(x);
        if x == 0 {
            self.e
        } else {
            x.trailing_zeros()
        }
    }

    pub fn inv_unit(self, u: u128) -> u128 {
        debug_assert!(u & 1 == 1);
        let mut x = u;
        for _ in 0..7 {
            x = x.wrapping_mul(2u128.wrapping_sub(u.wrapping_mul(x)));
        }
        self.red(x)
    }
}

/// `P · A · Q = diag(2^v_0, 2^v_1, …)` with `P`, `Q` invertible.
#[derive(Debug, Clone)]
pub struct Smith {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    /// Valuations of the diagonal, length `min(rows, cols)`; `E` marks zero.
    pub diag: Vec<u32>,
    pub p: Mat,
    pub q: Mat,
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect()
}

pub fn smith(a: &[Vec<u128>], e: u32) -> Smith {
    let ring = Ring::new(e);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Mat = a.iter().map(|r| r.iter().map(|&x| ring.red(x)).collect()).collect();
    let mut p = identity(rows);
    let mut q = identity(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best = (e, t, t);
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                let v = ring.val(x);
                if v < best.0 {
                    best = (v, i, j);
                }
            }
        }
        let (v, bi, bj) = best;
        if v == e {
            diag.extend(std::iter::repeat_n(e, rows.min(cols) - t));
            break;
        }
        m.swap(t, bi);
        p.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        for row in q.iter_mut() {
            row.swap(t, bj);
        }
        let unit_inv = ring.inv_unit(m[t][t] >> v);
        for x in m[t].iter_mut() {
            *x = ring.mul(*x, unit_inv);
        }
        for x in p[t].iter_mut() {
            *x = ring.mul(*x, unit_inv);
        }
        for i in t + 1..rows {
            let f = m[i][t] >> v;
            if f != 0 {
                for j in 0..cols {
                    m[i][j] = ring.sub(m[i][j], ring.mul(f, m[t][j]));
                }
                for j in 0..rows {
                    p[i][j] = ring.sub(p[i][j], ring.mul(f, p[t][j]));
                }
            }
        }
        for j in t + 1..cols {
            let f = m[t][j] >> v;
            if f != 0 {
                for row in m.iter_mut() {
                    row[j] = ring.sub(row[j], ring.mul(f, row[t]));
                }
                for row in q.iter_mut() {
                    row[j] = ring.sub(row[j], ring.mul(f, row[t]));
                }
            }
        }
        diag.push(v);
    }
    Smith {
        ring,
        rows,
        cols,
        diag,
        p,
        q,
    }
}

impl Smith {
    /// Row vector times a matrix.
    pub fn vec_mul(ring: Ring, x: &[u128], m: &[Vec<u128>]) -> Vec<u128> {
        let cols = m.first().map_or(0, Vec::len);
        let mut out = vec![0u128; cols];
        for (xi, row) in x.iter().zip(m) {
            if *xi == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = ring.add(*o, ring.mul(*xi, r));
            }
        }
        out
    }

    /// Some row vector `x` with `x · A = b`, or `None`.
    pub fn solve_row(&self, b: &[u128]) -> Option<Vec<u128>> {
        let ring = self.ring;
        let bq = Smith::vec_mul(ring, b, &self.q);
        let mut xp = vec![0u128; self.rows];
        for (j, &c) in bq.iter().enumerate() {
            let v = self.diag.get(j).copied().unwrap_or(ring.e);
            if ring.val(c) < v {
                return None;
            }
            if j < self.rows && v < ring.e {
                xp[j] = ring.red(c >> v);
            }
        }
        Some(Smith::vec_mul(ring, &xp, &self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(r: Ring, a: &Mat, b: &Mat) -> Mat {
        a.iter().map(|row| Smith::vec_mul(r, row, b)).collect()
    }

    #[test]
    fn diagonalizes() {
        let ring = Ring::new(10);
        let a: Mat = vec![vec![2, 4, 6], vec![4, 12, 8], vec![ring.from_i128(-2), 0, 1]];
        let s = smith(&a, 10);
        let d = mat_mul(ring, &mat_mul(ring, &s.p, &a), &s.q);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(ring.val(x), s.diag[i]);
                    assert_eq!(x, ring.red(1u128 << s.diag[i].min(127)) * u128::from(s.diag[i] < 10));
                } else {
                    assert_eq!(x, 0);
                }
            }
        }
        let mut sorted = s.diag.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn solves_rows() {
        let ring = Ring::new(8);
        let a: Mat = vec![vec![1, 0], vec![0, 4]];
        let s = smith(&a, 8);
        let x = s.solve_row(&[3, 8]).unwrap();
        assert_eq!(Smith::vec_mul(ring, &x, &a), vec![3, 8]);
        assert!(s.solve_row(&[0, 2]).is_none());
    }

    #[test]
    fn unit_inverse() {
        let r = Ring::new(128);
        for u in [1u128, 3, 5, 12345, u128::MAX] {
            assert_eq!(r.mul(u, r.inv_unit(u)), 1);
        }
    }
}
