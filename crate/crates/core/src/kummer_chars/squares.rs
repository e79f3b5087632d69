//! Square roots in `l(a_p) = l[u]/(p)` for `deg p ≤ 2`.
//!
//! For `deg p = 2` write `p = u² + b u + n`, `D = b² − 4n` and `a_p = (−b + √D)/2`,
//! so `h(a_p) = α + β√D` with `α, β ∈ l`. If `β = 0` then `h` is a square in
//! `l(√D)` iff `α` or `α/D` is a square in `l`. Otherwise `h` is a square iff
//! `α² − Dβ² = ν²` for some `ν ∈ l` and `(α ± ν)/2 = s²` for one sign, in
//! which case `s + (β/2s)√D` is a root.

use crate::error::{Error, Result};
use crate::exact_algebra::{sqrt_quad, QuadElem, QuadPoly};

use super::irred::IrredPoly;

/// A square root of `h` modulo `p`, if one exists.
pub fn sqrt_mod(h: &QuadPoly, p: &IrredPoly) -> Result<Option<QuadPoly>> {
    let field = p.field();
    let h = h.rem(p.poly())?;
    if h.is_zero() {
        return Err(Error::ZeroInput("square root of 0 modulo p"));
    }
    let cand = match p.degree() {
        1 => {
            let a = -p.poly().coeff(0);
            sqrt_quad(&h.eval(&a)).map(QuadPoly::constant)
        }
        2 => {
            let (b, n) = (p.poly().coeff(1), p.poly().coeff(0));
            let half = field.rational(num_rational::BigRational::new(1.into(), 2.into()));
            let dd = &(&b * &b) - &(&field.int(4) * &n);
            // √D = 2·a_p + b
            let sqrt_dd = QuadPoly::new(field, vec![b.clone(), field.int(2)]);
            let (h0, h1) = (h.coeff(0), h.coeff(1));
            let alpha = &h0 - &(&(&h1 * &b) * &half);
            let beta = &h1 * &half;
            sqrt_ext(&alpha, &beta, &dd).map(|(s, t)| QuadPoly::constant(s).add(&sqrt_dd.scale(&t)))
        }
        k => {
            return Err(Error::Unsupported(format!(
                "square classes modulo a degree-{k} polynomial"
            )))
        }
    };
    if let Some(g) = &cand {
        if g.mul(g).sub(&h).rem(p.poly())?.is_zero() {
            return Ok(cand);
        }
        return Err(Error::Postcondition(format!("square root {g} of {h} failed to verify")));
    }
    Ok(None)
}

/// `(s, t)` with `(s + t√D)² = α + β√D`, for `D` a nonsquare of `l`.
fn sqrt_ext(alpha: &QuadElem, beta: &QuadElem, dd: &QuadElem) -> Option<(QuadElem, QuadElem)> {
    let field = alpha.field();
    if beta.is_zero() {
        if let Some(s) = sqrt_quad(alpha) {
            return Some((s, field.zero()));
        }
        let t = sqrt_quad(&(alpha * &dd.inv().ok()?))?;
        return Some((field.zero(), t));
    }
    let nu = sqrt_quad(&(&(alpha * alpha) - &(&(dd * beta) * beta)))?;
    let half = field.rational(num_rational::BigRational::new(1.into(), 2.into()));
    for nu in [nu.clone(), -&nu] {
        let t2 = &(alpha + &nu) * &half;
        if t2.is_zero() {
            continue;
        }
        if let Some(s) = sqrt_quad(&t2) {
            let t = beta * &(&field.int(2) * &s).inv().ok()?;
            return Some((s, t));
        }
    }
    None
}

pub fn is_square_mod(h: &QuadPoly, p: &IrredPoly) -> Result<bool> {
    Ok(sqrt_mod(h, p)?.is_some())
}
