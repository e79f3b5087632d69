use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{factor, parse_poly, sqrt_quad, sqrt_rational, QuadElem, QuadField, QuadPoly, Rational};

/// Highest degree for which irreducibility over `l` is decided.
pub const MAX_IRRED_DEGREE: usize = 4;

/// Cap on Kronecker candidate triples before giving up.
const KRONECKER_CAP: usize = 1 << 21;

/// A monic irreducible `p ∈ l[u]` with `p(0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrredPoly {
    p: QuadPoly,
}

impl IrredPoly {
    pub fn new(p: QuadPoly) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::Precondition(format!("{p} is not monic")));
        }
        if p.coeff(0).is_zero() {
            return Err(Error::Precondition(format!("{p} vanishes at 0")));
        }
        if !is_irreducible(&p)? {
            return Err(Error::Precondition(format!(
                "{p} is reducible over Q(sqrt({}))",
                p.field().d()
            )));
        }
        Ok(IrredPoly { p })
    }

    pub(crate) fn new_unchecked(p: QuadPoly) -> Self {
        debug_assert!(p.is_monic() && !p.coeff(0).is_zero());
        IrredPoly { p }
    }

    pub fn parse(s: &str, field: QuadField) -> Result<Self> {
        IrredPoly::new(parse_poly(s, field)?)
    }

    pub fn poly(&self) -> &QuadPoly {
        &self.p
    }

    pub fn field(&self) -> QuadField {
        self.p.field()
    }

    pub fn degree(&self) -> usize {
        self.p.deg()
    }

    /// `[l(a_p) : Q]`.
    pub fn root_field_degree(&self) -> usize {
        2 * self.degree()
    }
}

impl fmt::Display for IrredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// Substitutes `x` for `u` in `p`.
pub(crate) fn compose(p: &QuadPoly, x: &QuadPoly) -> QuadPoly {
    let mut acc = QuadPoly::zero(p.field());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&QuadPoly::constant(c.clone()));
    }
    acc
}

pub(crate) fn is_square_or_zero(x: &QuadElem) -> bool {
    sqrt_quad(x).is_some()
}

/// Irreducibility over `l` for `1 ≤ deg p ≤ 4`.
///
/// Degree 2 and 3 reduce to root finding. For degree 4 the polynomial is
/// depressed to `y⁴ + P y² + Q y + R`; a split into `(y² + s y + t)(y² − s y + t')`
/// with `s ≠ 0` exists iff the resolvent `z³ + 2P z² + (P² − 4R) z − Q²` has a
/// nonzero root that is a square in `l`, and with `s = 0` iff `Q = 0` and
/// `P² − 4R` is a square.
pub fn is_irreducible(p: &QuadPoly) -> Result<bool> {
    let n = p.degree().ok_or(Error::ZeroInput("irreducibility of 0"))?;
    if n > MAX_IRRED_DEGREE {
        return Err(Error::Unsupported(format!("irreducibility test for degree {n}")));
    }
    let p = p.monic()?;
    match n {
        0 => Ok(false),
        1 => Ok(true),
        2 => {
            let (b, c) = (p.coeff(1), p.coeff(0));
            let disc = &(&b * &b) - &c.scale(&Rational::from_integer(4.into()));
            Ok(!is_square_or_zero(&disc))
        }
        3 => Ok(roots_in_l(&p)?.is_empty()),
        _ => {
            if !roots_in_l(&p)?.is_empty() {
                return Ok(false);
            }
            let field = p.field();
            let shift = p.coeff(3).scale(&Rational::new((-1).into(), 4.into()));
            let y = QuadPoly::new(field, vec![shift, field.one()]);
            let dep = compose(&p, &y);
            let (pp, q, r) = (dep.coeff(2), dep.coeff(1), dep.coeff(0));
            let four = field.int(4);
            let p2m4r = &(&pp * &pp) - &(&four * &r);
            if q.is_zero() && is_square_or_zero(&p2m4r) {
                return Ok(false);
            }
            let resolvent = QuadPoly::new(field, vec![-(&q * &q), p2m4r, &field.int(2) * &pp, field.one()]);
            for z in roots_in_l(&resolvent)? {
                if !z.is_zero() && is_square_or_zero(&z) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The distinct roots of `p` in `l`.
///
/// Roots are read off `p·σ(p) ∈ Q[u]`: rational roots by the rational root
/// theorem, the rest from its quadratic factors over `Q` (Kronecker's method
/// at `0, ±1`) whose discriminant lies in `d·Q*²`.
pub fn roots_in_l(p: &QuadPoly) -> Result<Vec<QuadElem>> {
    let field = p.field();
    if p.degree().ok_or(Error::ZeroInput("roots of 0"))? == 0 {
        return Ok(Vec::new());
    }
    let mut z = integer_norm_poly(p);
    let mut cands: Vec<QuadElem> = Vec::new();
    while z[0].is_zero() {
        z.remove(0);
        cands.push(field.zero());
    }
    for (a, b) in rational_roots(&z) {
        cands.push(field.rational(Rational::new(a.clone(), b.clone())));
        let lin = vec![-a, b];
        while let Some(q) = zdiv_exact(&z, &lin) {
            z = q;
        }
    }
    let d = Rational::from_integer(field.d().into());
    for q in quadratic_factors(&z)? {
        let disc = &q[1] * &q[1] - BigInt::from(4) * &q[0] * &q[2];
        let Some(t) = sqrt_rational(&(Rational::from_integer(disc) / &d)) else {
            continue;
        };
        let two_a = Rational::from_integer(BigInt::from(2) * &q[2]);
        let mb = Rational::from_integer(-&q[1]);
        for t in [t.clone(), -t] {
            cands.push(field.elem(&mb / &two_a, &t / &two_a));
        }
    }
    let mut out = BTreeSet::new();
    for c in cands {
        if p.eval(&c).is_zero() {
            out.insert(c);
        }
    }
    Ok(out.into_iter().collect())
}

/// `p·σ(p)` scaled to a primitive integer polynomial with positive leading coefficient.
fn integer_norm_poly(p: &QuadPoly) -> Vec<BigInt> {
    let r = p.mul(&p.conj());
    let qs: Vec<Rational> = r.coeffs().iter().map(|c| c.a.clone()).collect();
    let den = qs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z = qs
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    primitive(z)
}

fn primitive(mut z: Vec<BigInt>) -> Vec<BigInt> {
    let g = z.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        z.iter_mut().for_each(|c| *c = &*c / &g);
    }
    if z.last().is_some_and(|c| c.is_negative()) {
        z.iter_mut().for_each(|c| *c = -&*c);
    }
    z
}

fn zeval(z: &[BigInt], x: &BigInt) -> BigInt {
    z.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact division in `Z[u]`, `None` when it does not divide.
fn zdiv_exact(z: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if z.len() <= dg {
        return None;
    }
    let mut r = z.to_vec();
    let mut q = vec![BigInt::zero(); z.len() - dg];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dg].div_rem(&g[dg]);
        if !rem.is_zero() {
            return None;
        }
        for (i, gc) in g.iter().enumerate() {
            r[k + i] -= &c * gc;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in factor(&n.abs()) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &p;
            }
        }
        ds = next;
    }
    ds
}

/// Rational roots `a/b` (lowest terms, `b > 0`) of an integer polynomial with `z(0) ≠ 0`.
fn rational_roots(z: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let n = z.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for b in divisors(&z[n]) {
        for a0 in divisors(&z[0]) {
            if !a0.gcd(&b).is_one() {
                continue;
            }
            for a in [a0.clone(), -a0] {
                // b^n·z(a/b)
                let mut acc = BigInt::zero();
                let mut bp = BigInt::one();
                let mut terms = Vec::with_capacity(n + 1);
                for i in (0..=n).rev() {
                    terms.push((i, bp.clone()));
                    bp *= &b;
                }
                for (i, bpow) in terms {
                    acc += &z[i] * num_traits::pow(a.clone(), i) * bpow;
                }
                if acc.is_zero() {
                    out.push((a, b.clone()));
                }
            }
        }
    }
    out
}

/// Primitive quadratic factors `[γ, β, α]` (`α > 0`) of an integer polynomial without rational roots.
fn quadratic_factors(z: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = z.len() - 1;
    if n < 2 {
        return Ok(Vec::new());
    }
    if n == 2 {
        return Ok(vec![z.to_vec()]);
    }
    let v0 = zeval(z, &BigInt::zero());
    let v1 = zeval(z, &BigInt::one());
    let vm = zeval(z, &-BigInt::one());
    let (d0, d1, dm) = (divisors(&v0), divisors(&v1), divisors(&vm));
    if d0.len() * d1.len() * dm.len() * 4 > KRONECKER_CAP {
        return Err(Error::Unsupported(
            "coefficients too large for quadratic factor search".into(),
        ));
    }
    let two = BigInt::from(2);
    let mut out = BTreeSet::new();
    for g in &d0 {
        for g in [g.clone(), -g] {
            for s1 in &d1 {
                for s1 in [s1.clone(), -s1] {
                    for sm in &dm {
                        for sm in [sm.clone(), -sm] {
                            let sum = &s1 + &sm;
                            if sum.is_odd() {
                                continue;
                            }
                            let alpha = &sum / &two - &g;
                            if alpha.is_zero() || alpha.is_negative() {
                                continue;
                            }
                            let beta = (&s1 - &sm) / &two;
                            let q = vec![g.clone(), beta, alpha];
                            if zdiv_exact(z, &q).is_some() {
                                out.insert(primitive(q));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}
