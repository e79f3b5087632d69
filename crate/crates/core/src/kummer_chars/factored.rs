use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_algebra::{QuadElem, QuadField, QuadPoly, Rational};

use super::irred::IrredPoly;

/// `X^n·σ(p)(c/X)/σ(p(0))`: the monic polynomial whose roots are `c/σ(a_i)`.
pub fn tilde_poly(p: &IrredPoly, c: &Rational) -> Result<IrredPoly> {
    if c == &Rational::from_integer(0.into()) {
        return Err(Error::ZeroInput("tilde_poly with c = 0"));
    }
    let field = p.field();
    let n = p.degree();
    let a: Vec<QuadElem> = p.poly().coeffs().iter().map(|x| x.conj()).collect();
    let inv0 = a[0].inv()?;
    let mut out = Vec::with_capacity(n + 1);
    let mut cpow = field.one();
    let mut cks = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        cks.push(cpow.clone());
        cpow = cpow.scale(c);
    }
    for j in 0..=n {
        out.push(&(&a[n - j] * &cks[n - j]) * &inv0);
    }
    Ok(IrredPoly::new_unchecked(QuadPoly::new(field, out)))
}

/// `x + y√D` over `l`, enough arithmetic to expand products of roots.
#[derive(Debug, Clone)]
struct Ext {
    x: QuadElem,
    y: QuadElem,
}

impl Ext {
    fn mul(&self, o: &Ext, dd: &QuadElem) -> Ext {
        Ext {
            x: &(&self.x * &o.x) + &(&(&self.y * &o.y) * dd),
            y: &(&self.x * &o.y) + &(&self.y * &o.x),
        }
    }

    fn add(&self, o: &Ext) -> Ext {
        Ext {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    fn inv(&self, dd: &QuadElem) -> Result<Ext> {
        let n = &(&self.x * &self.x) - &(&(&self.y * &self.y) * dd);
        let ni = n.inv()?;
        Ok(Ext {
            x: &self.x * &ni,
            y: -&(&self.y * &ni),
        })
    }
}

/// `p̃` computed from the roots of `σ(p)` in `l(√D)` rather than the closed form.
pub fn tilde_poly_by_roots(p: &IrredPoly, c: &Rational) -> Result<QuadPoly> {
    let field = p.field();
    let sp = p.poly().conj();
    let cc = field.rational(c.clone());
    match p.degree() {
        1 => {
            let root = -&sp.coeff(0);
            Ok(QuadPoly::linear(&(&cc * &root.inv()?)))
        }
        2 => {
            let (b, n) = (sp.coeff(1), sp.coeff(0));
            let dd = &(&b * &b) - &(&field.int(4) * &n);
            let half = Rational::new(1.into(), 2.into());
            let mb2 = (-&b).scale(&half);
            let roots = [
                Ext {
                    x: mb2.clone(),
                    y: field.rational(half.clone()),
                },
                Ext {
                    x: mb2,
                    y: field.rational(-half),
                },
            ];
            let c_ext = Ext { x: cc, y: field.zero() };
            let r: Vec<Ext> = roots
                .iter()
                .map(|b| b.inv(&dd).map(|i| i.mul(&c_ext, &dd)))
                .collect::<Result<_>>()?;
            let sum = r[0].add(&r[1]);
            let prod = r[0].mul(&r[1], &dd);
            if !sum.y.is_zero() || !prod.y.is_zero() {
                return Err(Error::Postcondition("root symmetric functions left l".into()));
            }
            Ok(QuadPoly::new(field, vec![prod.x, -&sum.x, field.one()]))
        }
        k => Err(Error::Unsupported(format!("root-level tilde for degree {k}"))),
    }
}

/// `unit · u^u_exp · Π p^{e_p}` in `l(u)*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRF {
    pub unit: QuadElem,
    pub u_exp: i64,
    pub factors: BTreeMap<IrredPoly, i64>,
}

impl FactoredRF {
    pub fn new(unit: QuadElem, u_exp: i64, factors: impl IntoIterator<Item = (IrredPoly, i64)>) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::ZeroInput("FactoredRF unit"));
        }
        let mut x = FactoredRF {
            unit,
            u_exp,
            factors: BTreeMap::new(),
        };
        for (p, e) in factors {
            if p.field() != x.field() {
                return Err(Error::FieldMismatch(p.field().d(), x.field().d()));
            }
            x.push(p, e);
        }
        Ok(x)
    }

    pub fn one(field: QuadField) -> Self {
        FactoredRF {
            unit: field.one(),
            u_exp: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn u(field: QuadField) -> Self {
        FactoredRF {
            u_exp: 1,
            ..FactoredRF::one(field)
        }
    }

    pub fn field(&self) -> QuadField {
        self.unit.field()
    }

    fn push(&mut self, p: IrredPoly, e: i64) {
        let slot = self.factors.entry(p).or_insert(0);
        *slot += e;
        self.factors.retain(|_, e| *e != 0);
    }

    pub fn mul(&self, o: &FactoredRF) -> FactoredRF {
        let mut out = FactoredRF {
            unit: &self.unit * &o.unit,
            u_exp: self.u_exp + o.u_exp,
            factors: self.factors.clone(),
        };
        for (p, e) in &o.factors {
            out.push(p.clone(), *e);
        }
        out
    }

    pub fn inv(&self) -> FactoredRF {
        FactoredRF {
            unit: self.unit.inv().expect("nonzero unit"),
            u_exp: -self.u_exp,
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    /// Value at `u = x`; errors at zeros and poles.
    pub fn eval(&self, x: &QuadElem) -> Result<QuadElem> {
        let mut acc = self.unit.clone();
        if self.u_exp != 0 {
            if x.is_zero() {
                return Err(Error::ZeroInput("evaluation at a zero or pole"));
            }
            acc = &acc * &x.pow(self.u_exp);
        }
        for (p, e) in &self.factors {
            let v = p.poly().eval(x);
            if v.is_zero() {
                return Err(Error::ZeroInput("evaluation at a zero or pole"));
            }
            acc = &acc * &v.pow(*e);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactoredRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.unit)?;
        if self.u_exp != 0 {
            write!(f, "*u^{}", self.u_exp)?;
        }
        for (p, e) in &self.factors {
            write!(f, "*({p})^{e}")?;
        }
        Ok(())
    }
}

/// Applies `s`: `σ` on `l`, `u ↦ c/u`, and `p ↦ σ(p(0))·u^{−deg p}·p̃`.
pub fn s_action_factored(x: &FactoredRF, c: &Rational) -> Result<FactoredRF> {
    let field = x.field();
    let mut unit = &x.unit.conj() * &field.rational(c.clone()).pow(x.u_exp);
    let mut u_exp = -x.u_exp;
    let mut factors = BTreeMap::new();
    for (p, &e) in &x.factors {
        unit = &unit * &p.poly().coeff(0).conj().pow(e);
        u_exp -= e * p.degree() as i64;
        factors.insert(tilde_poly(p, c)?, e);
    }
    Ok(FactoredRF { unit, u_exp, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, parse_quad};

    fn l2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    fn ip(s: &str) -> IrredPoly {
        IrredPoly::parse(s, l2()).unwrap()
    }

    #[test]
    fn tilde_examples() {
        let t = tilde_poly(&ip("u - (1+sqrt(2))"), &int(3)).unwrap();
        assert_eq!(t, ip("u + 3 + 3*sqrt(2)"));
        assert_eq!(tilde_poly(&ip("u - 1"), &int(1)).unwrap(), ip("u - 1"));
        assert!(tilde_poly(&ip("u - 1"), &int(0)).is_err());
        let p = ip("u^2 + (1+sqrt(2))*u + 5");
        assert_eq!(
            tilde_poly(&p, &int(7)).unwrap().poly(),
            &tilde_poly_by_roots(&p, &int(7)).unwrap()
        );
    }

    #[test]
    fn s_on_u_and_linear() {
        let s = s_action_factored(&FactoredRF::u(l2()), &int(3)).unwrap();
        assert_eq!(s, FactoredRF::new(l2().int(3), -1, []).unwrap());
        let a = parse_quad("2+sqrt(2)", l2()).unwrap();
        let x = FactoredRF::new(l2().one(), 0, [(IrredPoly::new(QuadPoly::linear(&-&a)).unwrap(), 1)]).unwrap();
        let s = s_action_factored(&x, &int(3)).unwrap();
        let sa = a.conj();
        let lin = QuadPoly::linear(&-&(&l2().int(3) * &sa.inv().unwrap()));
        assert_eq!(s, FactoredRF::new(sa, -1, [(IrredPoly::new(lin).unwrap(), 1)]).unwrap());
        assert_eq!(s_action_factored(&s, &int(3)).unwrap(), x);
    }
}
