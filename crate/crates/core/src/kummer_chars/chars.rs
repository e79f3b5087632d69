use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{
    is_square_rational, parse_poly, resultant, sqrt_quad, sqrt_rational, QuadElem, QuadField, QuadPoly, Rational,
};

use super::factored::tilde_poly;
use super::irred::{is_square_or_zero, IrredPoly};
use super::squares::is_square_mod;

/// The order-2 character of `l` cutting out `l(√e)`, `e` a nonsquare.
///
/// Equality is equality of square classes.
#[derive(Debug, Clone)]
pub struct Char2L {
    e: QuadElem,
}

impl Char2L {
    pub fn new(e: QuadElem) -> Result<Self> {
        Char2L::from_class(e)?.ok_or_else(|| Error::Precondition("square representative: trivial character".into()))
    }

    /// `None` for a square (the trivial character).
    pub fn from_class(e: QuadElem) -> Result<Option<Self>> {
        if e.is_zero() {
            return Err(Error::ZeroInput("Kummer representative"));
        }
        Ok((!is_square_or_zero(&e)).then_some(Char2L { e }))
    }

    pub fn e(&self) -> &QuadElem {
        &self.e
    }

    pub fn same_class(&self, o: &Char2L) -> bool {
        self.e.d() == o.e.d() && is_square_or_zero(&(&self.e * &o.e))
    }

    /// Representative of a possibly trivial character.
    pub fn rep(x: Option<&Char2L>, field: QuadField) -> QuadElem {
        x.map_or_else(|| field.one(), |c| c.e.clone())
    }

    /// The sum of two possibly trivial characters.
    pub fn sum(a: Option<&Char2L>, b: Option<&Char2L>, field: QuadField) -> Option<Char2L> {
        let e = &Char2L::rep(a, field) * &Char2L::rep(b, field);
        Char2L::from_class(e).expect("nonzero product")
    }

    pub fn opt_eq(a: Option<&Char2L>, b: Option<&Char2L>) -> bool {
        match (a, b) {
            (None, None) => true,
            (Some(x), Some(y)) => x.same_class(y),
            _ => false,
        }
    }
}

impl PartialEq for Char2L {
    fn eq(&self, o: &Char2L) -> bool {
        self.same_class(o)
    }
}

impl fmt::Display for Char2L {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}]", self.e)
    }
}

/// `e ↦ σ(e)`. At exponent 2 this is also `s*_uu`, the sign being immaterial.
pub fn sigma_char(chi: &Char2L) -> Char2L {
    Char2L { e: chi.e.conj() }
}

/// An order ≤ 2 character of `l(a_p)`, represented by `f(a_p)` with `f` reduced mod `p`.
#[derive(Debug, Clone)]
pub struct Char2P {
    p: IrredPoly,
    f: QuadPoly,
}

impl Char2P {
    pub fn new(p: IrredPoly, f: QuadPoly) -> Result<Self> {
        if f.field() != p.field() {
            return Err(Error::FieldMismatch(f.field().d(), p.field().d()));
        }
        let f = f.rem(p.poly())?;
        if f.is_zero() {
            return Err(Error::ZeroInput("character representative vanishes mod p"));
        }
        Ok(Char2P { p, f })
    }

    /// Parses `chi[<p>; <f>]`.
    pub fn parse(s: &str, field: QuadField) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix("chi[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, "expected chi[<p>; <f>]"))?;
        let (ps, fs) = body.split_once(';').ok_or_else(|| Error::parse(4, "missing ';'"))?;
        let p = IrredPoly::new(parse_poly(ps, field).map_err(|e| shift_pos(e, 4))?)?;
        let f = parse_poly(fs, field).map_err(|e| shift_pos(e, 5 + ps.len()))?;
        Char2P::new(p, f)
    }

    pub fn p(&self) -> &IrredPoly {
        &self.p
    }

    pub fn f(&self) -> &QuadPoly {
        &self.f
    }

    pub fn is_trivial(&self) -> Result<bool> {
        is_square_mod(&self.f, &self.p)
    }

    pub fn same_class(&self, o: &Char2P) -> Result<bool> {
        if self.p != o.p {
            return Ok(false);
        }
        is_square_mod(&self.f.mul(&o.f), &self.p)
    }

    pub fn mul(&self, o: &Char2P) -> Result<Char2P> {
        if self.p != o.p {
            return Err(Error::Precondition(format!("characters over {} and {}", self.p, o.p)));
        }
        Char2P::new(self.p.clone(), self.f.mul(&o.f))
    }
}

impl fmt::Display for Char2P {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}; {}]", self.p, self.f)
    }
}

fn shift_pos(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

/// `N_{l(a_p)/l}(f) = Res(p, f)`.
pub fn char_norm(chi: &Char2P) -> Result<QuadElem> {
    resultant(chi.p.poly(), &chi.f)
}

/// Corestriction to `l`: the class of the norm, `None` when it is a square.
pub fn cor_char(chi: &Char2P) -> Result<Option<Char2L>> {
    Char2L::from_class(char_norm(chi)?)
}

/// `s*_pu(χ) = −σ(Cor χ)`, equal to `σ(Cor χ)` at exponent 2.
pub fn s_pu_star(chi: &Char2P) -> Result<Option<Char2L>> {
    Ok(cor_char(chi)?.as_ref().map(sigma_char))
}

/// Transport along the isomorphism `l(a_p) → l(a_p̃)` extending `σ` with
/// `a_p ↦ c/a_p̃`: `f ↦ σ(f)(c·u⁻¹) mod p̃`.
pub fn s_tilde_star(chi: &Char2P, c: &Rational) -> Result<Char2P> {
    let q = tilde_poly(&chi.p, c)?;
    let field = q.field();
    let u_inv = QuadPoly::u(field).inv_mod(q.poly())?;
    let arg = u_inv.scale(&field.rational(c.clone()));
    let f = chi.f.conj().compose_mod(&arg, q.poly())?;
    Char2P::new(q, f)
}

/// `s*_pp = σ̃` on a self-tilde `p`, with `σ̃(a_p) = c/a_p`.
///
/// The representative map is an involution on the nose, not only on classes.
pub fn s_pp_star(chi: &Char2P, c: &Rational) -> Result<Char2P> {
    if chi.p.degree() > 2 {
        return Err(Error::Unsupported(format!("s_pp_star for degree {}", chi.p.degree())));
    }
    if tilde_poly(&chi.p, c)? != chi.p {
        return Err(Error::Precondition(format!("{} is not self-tilde for c = {c}", chi.p)));
    }
    s_tilde_star(chi, c)
}

/// `Cor(s_p̃p χ) ~ σ(Cor χ)`.
pub fn cor_identity_check(chi: &Char2P, c: &Rational) -> Result<bool> {
    if chi.p.degree() > 2 {
        return Err(Error::Unsupported(format!(
            "cor identity for degree {}",
            chi.p.degree()
        )));
    }
    let lhs = cor_char(&s_tilde_star(chi, c)?)?;
    let rhs = cor_char(chi)?.as_ref().map(sigma_char);
    Ok(Char2L::opt_eq(lhs.as_ref(), rhs.as_ref()))
}

/// Shape of `Gal(l(√e)/k)` for `k = Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WClass {
    NotGalois,
    Cyclic4,
    KleinW,
}

impl fmt::Display for WClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WClass::NotGalois => "NotGalois",
            WClass::Cyclic4 => "Cyclic4",
            WClass::KleinW => "KleinW",
        })
    }
}

/// `l(√e)/Q` is Galois iff `σ(e)/e ∈ l*²`; it is then biquadratic iff
/// `N(e) ∈ Q*²`, and cyclic otherwise.
pub fn w_membership(e: &QuadElem) -> Result<WClass> {
    Char2L::new(e.clone())?;
    if !is_square_or_zero(&(&e.conj() * e)) {
        // σ(e)/e ~ σ(e)·e as classes; the product is the rational N(e)
        return Ok(WClass::NotGalois);
    }
    if is_square_rational(&e.norm()) {
        Ok(WClass::KleinW)
    } else {
        Ok(WClass::Cyclic4)
    }
}

/// A rational `r` with `r/e ∈ l*²` for `KleinW` classes: `r = 2(a ± ν)`, `ν² = N(e)`,
/// since `(√e + √σe)² = 2a + 2ν`.
pub fn klein_rational_rep(e: &QuadElem) -> Result<Option<Rational>> {
    if w_membership(e)? != WClass::KleinW {
        return Ok(None);
    }
    let nu = sqrt_rational(&e.norm()).expect("norm is a square");
    for nu in [nu.clone(), -nu] {
        let r = (&e.a + &nu) * Rational::from_integer(2.into());
        if r == Rational::from_integer(0.into()) {
            continue;
        }
        let ratio = &e.field().rational(r.clone()) * &e.inv()?;
        if sqrt_quad(&ratio).is_some() {
            return Ok(Some(r));
        }
        return Err(Error::Postcondition(format!("{r}/({e}) is not a square")));
    }
    Err(Error::Postcondition(format!("no rational representative for {e}")))
}

/// For `e` with `σ(e)/e` a square: `l(√e)/Q` is cyclic of order 4 iff `d·N(e) ∈ Q*²`.
pub fn cyclic_quartic_criterion(e: &QuadElem) -> bool {
    is_square_rational(&(e.norm() * Rational::from_integer(e.d().into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, parse_quad};

    fn l2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    fn q(s: &str) -> QuadElem {
        parse_quad(s, l2()).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_char(&Char2L::new(q("3")).unwrap()).e(), &q("3"));
        assert_eq!(sigma_char(&Char2L::new(q("2+sqrt(2)")).unwrap()).e(), &q("2-sqrt(2)"));
        assert!(Char2L::new(q("8")).is_err());
        assert_eq!(Char2L::new(q("3")).unwrap(), Char2L::new(q("12")).unwrap());
    }

    #[test]
    fn cor_examples() {
        let chi = Char2P::parse("chi[u^2 - 3; u]", l2()).unwrap();
        assert_eq!(char_norm(&chi).unwrap(), q("-3"));
        assert_eq!(cor_char(&chi).unwrap().unwrap().e(), &q("-3"));
        assert_eq!(s_pu_star(&chi).unwrap().unwrap().e(), &q("-3"));
        let one = Char2P::parse("chi[u^2 - 3; 1]", l2()).unwrap();
        assert!(cor_char(&one).unwrap().is_none());
        assert!(cor_identity_check(&chi, &int(1)).unwrap());
    }

    #[test]
    fn s_pp_involution_and_guard() {
        let chi = Char2P::parse("chi[u^2 - 3; u + 1]", l2()).unwrap();
        let once = s_pp_star(&chi, &int(3)).unwrap();
        let twice = s_pp_star(&once, &int(3)).unwrap();
        assert_eq!(twice.f(), chi.f());
        assert!(s_pp_star(&chi, &int(5)).is_err());
        let k = Char2P::parse("chi[u^2 - 3; 1+sqrt(2)]", l2()).unwrap();
        assert_eq!(s_pp_star(&k, &int(3)).unwrap().f(), &QuadPoly::constant(q("1-sqrt(2)")));
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_membership(&q("3")).unwrap(), WClass::KleinW);
        assert_eq!(w_membership(&q("2+sqrt(2)")).unwrap(), WClass::Cyclic4);
        assert_eq!(w_membership(&q("sqrt(2)")).unwrap(), WClass::NotGalois);
        assert!(w_membership(&q("9")).is_err());
        assert!(cyclic_quartic_criterion(&q("2+sqrt(2)")));
        assert_eq!(klein_rational_rep(&q("3")).unwrap(), Some(int(12)));
        let e = q("3+2*sqrt(2)") * q("5");
        assert_eq!(w_membership(&e).unwrap(), WClass::KleinW);
        assert!(klein_rational_rep(&e).unwrap().is_some());
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(
            Char2P::parse("chi[u^2 - 3 u]", l2()),
            Err(Error::Parse { .. })
        ));
        assert!(Char2P::parse("chi[u^2 - 3; u^2 - 3]", l2()).is_err());
    }
}
