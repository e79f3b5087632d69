//! Brute-force local solubility of `z² = a x² + b y²`.
//!
//! A primitive solution is searched modulo `p^k` with
//! `k = 2·v_p(16ab) + 3`, which is enough precision for the answer to
//! agree with solubility over `Q_p`. Triples are normalized projectively
//! into three charts (`z = 1`; `p | z, x = 1`; `p | z, p | x, y = 1`) and
//! lifted one `p`-adic digit at a time, pruning residues that already fail.

use num_bigint::BigInt;

use super::factor::is_prime;
use super::rational::valuation;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

struct Search {
    p: u128,
    k: u32,
    a: u128,
    b: u128,
}

impl Search {
    fn residue(&self, x: u128, y: u128, z: u128, m: u128) -> u128 {
        let sq = |v: u128| (v % m) * (v % m) % m;
        let rhs = (self.a % m * sq(x) + self.b % m * sq(y)) % m;
        (sq(z) + m - rhs) % m
    }

    /// Extends `(x, y, z)` mod `p^j` to a solution mod `p^k`. `free`
    /// marks which coordinates still take digits; chart constants stay.
    fn dfs(&self, j: u32, pj: u128, v: [u128; 3], free: [bool; 3], zero_first: [bool; 3]) -> bool {
        if j == self.k {
            return true;
        }
        let next = pj * self.p;
        let digits = |i: usize| -> u128 {
            if !free[i] || (j == 0 && zero_first[i]) {
                1
            } else {
                self.p
            }
        };
        let (dx, dy, dz) = (digits(0), digits(1), digits(2));
        for a in 0..dx {
            for b in 0..dy {
                for c in 0..dz {
                    let w = [
                        if free[0] { v[0] + a * pj } else { v[0] },
                        if free[1] { v[1] + b * pj } else { v[1] },
                        if free[2] { v[2] + c * pj } else { v[2] },
                    ];
                    if self.residue(w[0], w[1], w[2], next) == 0 && self.dfs(j + 1, next, w, free, zero_first) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// `+1` if `z² = a x² + b y²` has a primitive solution modulo `p^k`
/// (`k = 2·v_p(16ab) + 3`), else `−1`.
pub fn hilbert_bruteforce(a: i64, b: i64, p: u64) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroInput("hilbert_bruteforce"));
    }
    if !is_prime(&BigInt::from(p)) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let v = valuation(&(BigInt::from(16) * a * b), p);
    let k = 2 * v + 3;
    let pp = p as u128;
    let modulus = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(pp).filter(|&m| m < 1 << 62));
    let Some(m) = modulus else {
        return Err(Error::OutOfRange(format!("modulus {p}^{k} too large for brute force")));
    };
    let red = |t: i64| (t as i128).rem_euclid(m as i128) as u128;
    let s = Search {
        p: pp,
        k,
        a: red(a),
        b: red(b),
    };
    // (x, y, z): chart 1 fixes z = 1; chart 2 fixes x = 1 with p | z;
    // chart 3 fixes y = 1 with p | x, p | z.
    let charts = [
        ([0, 0, 1], [true, true, false], [false, false, false]),
        ([1, 0, 0], [false, true, true], [false, false, true]),
        ([0, 1, 0], [true, false, true], [true, false, true]),
    ];
    let found = charts.iter().any(|&(v0, free, zf)| s.dfs(0, 1, v0, free, zf));
    Ok(if found { 1 } else { -1 })
}

/// [`hilbert_bruteforce`] over many `(a, b, p)`, in input order.
pub fn hilbert_bruteforce_many(exec: Exec, cases: &[(i64, i64, u64)]) -> Vec<Result<i8>> {
    par::map(exec, cases, |&(a, b, p)| hilbert_bruteforce(a, b, p))
}
