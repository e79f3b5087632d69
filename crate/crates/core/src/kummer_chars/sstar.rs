use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::brauer_local::BrauerElem;
use crate::error::{Error, Result};
use crate::exact_algebra::{QuadField, Rational};

use super::chars::{char_norm, cor_char, s_pu_star, s_tilde_star, sigma_char, Char2L, Char2P};
use super::irred::IrredPoly;

/// The components `s*_u1`, `s*_p1` of `s*` landing in `Br(l)`.
pub trait SStarTable {
    fn s_u1(&self, chi: &Char2L) -> Result<BrauerElem>;
    fn s_p1(&self, chi: &Char2P) -> Result<BrauerElem>;
}

/// Both components zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroTable;

impl SStarTable for ZeroTable {
    fn s_u1(&self, chi: &Char2L) -> Result<BrauerElem> {
        BrauerElem::zero(chi.e().d())
    }

    fn s_p1(&self, chi: &Char2P) -> Result<BrauerElem> {
        BrauerElem::zero(chi.p().field().d())
    }
}

/// `s*_u1 = 0`, `s*_p1(χ) = b` when `N_{l/Q}(Cor χ) < 0`, else 0.
///
/// `b` must be `σ`-fixed of order ≤ 2, which makes the table a homomorphism
/// compatible with `s*∘s* = id`.
#[derive(Debug, Clone)]
pub struct NormSignTable {
    b: BrauerElem,
}

impl NormSignTable {
    pub fn new(b: BrauerElem) -> Result<Self> {
        if b.galois_act() != b || b.order_log2() > 1 {
            return Err(Error::Precondition(format!(
                "{b} is not a sigma-fixed element of order <= 2"
            )));
        }
        Ok(NormSignTable { b })
    }
}

impl SStarTable for NormSignTable {
    fn s_u1(&self, chi: &Char2L) -> Result<BrauerElem> {
        BrauerElem::zero(chi.e().d())
    }

    fn s_p1(&self, chi: &Char2P) -> Result<BrauerElem> {
        if char_norm(chi)?.norm().is_negative() {
            Ok(self.b.clone())
        } else {
            BrauerElem::zero(self.b.d())
        }
    }
}

/// `β ⊕ χ_u ⊕ Σχ_p` with every component of order ≤ 2; trivial `χ_p` are dropped.
#[derive(Debug, Clone)]
pub struct BrLUElem {
    pub beta: BrauerElem,
    pub chi_u: Option<Char2L>,
    pub chis: BTreeMap<IrredPoly, Char2P>,
}

impl BrLUElem {
    pub fn new(beta: BrauerElem, chi_u: Option<Char2L>, chis: impl IntoIterator<Item = Char2P>) -> Result<Self> {
        let d = beta.d();
        if beta.order_log2() > 1 {
            return Err(Error::Precondition(format!("{beta} has order > 2")));
        }
        if chi_u.as_ref().is_some_and(|c| c.e().d() != d) {
            return Err(Error::FieldMismatch(chi_u.unwrap().e().d(), d));
        }
        let mut x = BrLUElem {
            beta,
            chi_u,
            chis: BTreeMap::new(),
        };
        for chi in chis {
            if chi.p().field().d() != d {
                return Err(Error::FieldMismatch(chi.p().field().d(), d));
            }
            x.add_char(chi)?;
        }
        Ok(x)
    }

    pub fn zero(d: i64) -> Result<Self> {
        Ok(BrLUElem {
            beta: BrauerElem::zero(d)?,
            chi_u: None,
            chis: BTreeMap::new(),
        })
    }

    pub fn d(&self) -> i64 {
        self.beta.d()
    }

    fn field(&self) -> QuadField {
        QuadField::new(self.d()).expect("valid field")
    }

    fn add_char(&mut self, chi: Char2P) -> Result<()> {
        let merged = match self.chis.remove(chi.p()) {
            Some(old) => old.mul(&chi)?,
            None => chi,
        };
        if !merged.is_trivial()? {
            self.chis.insert(merged.p().clone(), merged);
        }
        Ok(())
    }

    pub fn add(&self, o: &BrLUElem) -> Result<BrLUElem> {
        let mut out = BrLUElem {
            beta: self.beta.add(&o.beta)?,
            chi_u: Char2L::sum(self.chi_u.as_ref(), o.chi_u.as_ref(), self.field()),
            chis: self.chis.clone(),
        };
        for chi in o.chis.values() {
            out.add_char(chi.clone())?;
        }
        Ok(out)
    }

    /// Equality with characters compared by square class.
    pub fn same_class(&self, o: &BrLUElem) -> Result<bool> {
        if self.beta != o.beta || !Char2L::opt_eq(self.chi_u.as_ref(), o.chi_u.as_ref()) {
            return Ok(false);
        }
        if self.chis.len() != o.chis.len() {
            return Ok(false);
        }
        for (p, chi) in &self.chis {
            match o.chis.get(p) {
                Some(other) if chi.same_class(other)? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> bool {
        self.beta.is_zero() && self.chi_u.is_none() && self.chis.is_empty()
    }
}

impl fmt::Display for BrLUElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + ", self.beta)?;
        match &self.chi_u {
            Some(c) => write!(f, "u:{c}")?,
            None => write!(f, "u:0")?,
        }
        for chi in self.chis.values() {
            write!(f, " + {chi}")?;
        }
        Ok(())
    }
}

fn check_degrees(x: &BrLUElem) -> Result<()> {
    match x.chis.keys().find(|p| p.degree() > 2) {
        Some(p) => Err(Error::Unsupported(format!(
            "s* on a character over degree-{} {p}",
            p.degree()
        ))),
        None => Ok(()),
    }
}

/// `s₁*(χ_u + Σχ_p)` through the table.
pub fn table_image(x: &BrLUElem, table: &dyn SStarTable) -> Result<BrauerElem> {
    let mut acc = BrauerElem::zero(x.d())?;
    if let Some(c) = &x.chi_u {
        acc = acc.add(&table.s_u1(c)?)?;
    }
    for chi in x.chis.values() {
        acc = acc.add(&table.s_p1(chi)?)?;
    }
    Ok(acc)
}

fn s_star_once(x: &BrLUElem, c: &Rational, table: &dyn SStarTable) -> Result<BrLUElem> {
    let field = x.field();
    let mut chi_u = x.chi_u.as_ref().map(sigma_char);
    let mut chis = Vec::with_capacity(x.chis.len());
    for chi in x.chis.values() {
        chi_u = Char2L::sum(chi_u.as_ref(), s_pu_star(chi)?.as_ref(), field);
        chis.push(s_tilde_star(chi, c)?);
    }
    let beta = x.beta.galois_act().add(&table_image(x, table)?)?;
    BrLUElem::new(beta, chi_u, chis)
}

/// The triangular action of `s*`, with `s*∘s* = id` checked for the table.
pub fn apply_s_star(x: &BrLUElem, c: &Rational, table: &dyn SStarTable) -> Result<BrLUElem> {
    check_degrees(x)?;
    let once = s_star_once(x, c, table)?;
    let twice = s_star_once(&once, c, table)?;
    if !twice.same_class(x)? {
        return Err(Error::Postcondition(format!(
            "s* is not an involution on {x} with this table"
        )));
    }
    Ok(once)
}

/// Outcome of one fixed-point condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Condition {
    fn ok() -> Self {
        Condition {
            pass: true,
            witness: None,
        }
    }

    fn fail(w: String) -> Self {
        Condition {
            pass: false,
            witness: Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedReport {
    pub cond_i: Condition,
    pub cond_ii: Condition,
    pub cond_iii: Condition,
}

impl FixedReport {
    pub fn all_pass(&self) -> bool {
        self.cond_i.pass && self.cond_ii.pass && self.cond_iii.pass
    }
}

/// Evaluates conditions (i) `s_p̃p χ_p = χ_p̃`, (ii) `(1+σ)χ_u = −Cor Σχ_p` and
/// (iii) `(1−σ)β = s₁*(χ_u + Σχ_p)`.
pub fn check_fixed_conditions(x: &BrLUElem, c: &Rational, table: &dyn SStarTable) -> Result<FixedReport> {
    check_degrees(x)?;
    let field = x.field();
    let mut cond_i = Condition::ok();
    for chi in x.chis.values() {
        let moved = s_tilde_star(chi, c)?;
        let ok = match x.chis.get(moved.p()) {
            Some(there) => moved.same_class(there)?,
            None => moved.is_trivial()?,
        };
        if !ok {
            let there = x
                .chis
                .get(moved.p())
                .map_or_else(|| "trivial".to_string(), |t| t.to_string());
            cond_i = Condition::fail(format!(
                "s({chi}) = {moved} but the component at {} is {there}",
                moved.p()
            ));
            break;
        }
    }

    let lhs = x
        .chi_u
        .as_ref()
        .and_then(|e| Char2L::from_class(&e.e().conj() * e.e()).expect("nonzero"));
    let mut rhs: Option<Char2L> = None;
    for chi in x.chis.values() {
        rhs = Char2L::sum(rhs.as_ref(), cor_char(chi)?.as_ref(), field);
    }
    let cond_ii = if Char2L::opt_eq(lhs.as_ref(), rhs.as_ref()) {
        Condition::ok()
    } else {
        let show = |v: &Option<Char2L>| v.as_ref().map_or_else(|| "trivial".to_string(), |c| c.to_string());
        Condition::fail(format!("(1+sigma)chi_u = {} but Cor sum = {}", show(&lhs), show(&rhs)))
    };

    let ob = x.beta.one_minus_sigma();
    let t = table_image(x, table)?;
    let cond_iii = if ob == t {
        Condition::ok()
    } else {
        Condition::fail(format!("(1-sigma)beta = {ob} but s1* = {t}"))
    };
    Ok(FixedReport {
        cond_i,
        cond_ii,
        cond_iii,
    })
}
