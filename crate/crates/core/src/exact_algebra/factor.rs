//! Integer factorization: trial division up to a fixed bound, then
//! Brent's variant of Pollard rho with a Miller–Rabin primality test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_BOUND: u64 = 10_000;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 prime bases; deterministic below 3.3·10²⁴.
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let bp = BigInt::from(p);
        if n == bp {
            return true;
        }
        if n.is_multiple_of(&bp) {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = &n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, &n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, seed: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let c = BigInt::from(seed);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2 + seed);
    let m = 64u64;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if g != one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_into(r.clone(), out);
        split_into(r, out);
        return;
    }
    for seed in 1..64 {
        if let Some(f) = pollard_brent(&n, seed) {
            let other = &n / &f;
            split_into(f, out);
            split_into(other, out);
            return;
        }
    }
    // Pollard rho exhausted its seeds; keep the cofactor whole.
    out.push(n);
}

/// Prime factorization of `|n|` for `n ≠ 0`, sorted by prime.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factor(0)");
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while n.is_multiple_of(&bp) {
            n /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Distinct primes dividing `n` (as `u64`), `None` if one does not fit.
pub fn primes_dividing(n: &BigInt) -> Option<Vec<u64>> {
    if n.is_zero() {
        return Some(Vec::new());
    }
    factor(n).into_iter().map(|(p, _)| p.to_u64()).collect()
}

pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s
}
