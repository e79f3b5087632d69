use std::fmt;

use num_traits::Signed;

use super::quad::{QuadElem, QuadField};
use crate::error::{Error, Result};

/// A polynomial in `u` over `Q(√d)`; coefficients stored low degree first,
/// with no trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadPoly {
    field: QuadField,
    coeffs: Vec<QuadElem>,
}

impl QuadPoly {
    pub fn new(field: QuadField, mut coeffs: Vec<QuadElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert_eq!(c.d(), field.d(), "coefficient from another field");
        }
        QuadPoly { field, coeffs }
    }

    pub fn from_ints(field: QuadField, cs: &[i64]) -> Self {
        QuadPoly::new(field, cs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: QuadField) -> Self {
        QuadPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: QuadElem) -> Self {
        QuadPoly::new(c.field(), vec![c])
    }

    /// The indeterminate `u`.
    pub fn u(field: QuadField) -> Self {
        QuadPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `u − a`.
    pub fn linear(a: &QuadElem) -> Self {
        QuadPoly::new(a.field(), vec![-a, a.field().one()])
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn coeffs(&self) -> &[QuadElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QuadElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> QuadElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Result<QuadPoly> {
        if self.is_zero() {
            return Err(Error::ZeroInput("monic of zero polynomial"));
        }
        let inv = self.lc().inv()?;
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &QuadElem) -> QuadPoly {
        QuadPoly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Applies `σ` to every coefficient.
    pub fn conj(&self) -> QuadPoly {
        QuadPoly::new(self.field, self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn add(&self, o: &QuadPoly) -> QuadPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuadPoly::new(self.field, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QuadPoly) -> QuadPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuadPoly::new(self.field, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QuadPoly {
        QuadPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &QuadPoly) -> QuadPoly {
        if self.is_zero() || o.is_zero() {
            return QuadPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QuadPoly::new(self.field, out)
    }

    pub fn pow(&self, e: u32) -> QuadPoly {
        let mut acc = QuadPoly::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, g: &QuadPoly) -> Result<(QuadPoly, QuadPoly)> {
        let dg = g.degree().ok_or(Error::ZeroInput("polynomial division by zero"))?;
        let inv = g.lc().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dg).max(1)];
        while r.len() > dg && !r.is_empty() {
            let k = r.len() - 1 - dg;
            let c = r.last().unwrap() * &inv;
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * gc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((QuadPoly::new(self.field, q), QuadPoly::new(self.field, r)))
    }

    pub fn rem(&self, g: &QuadPoly) -> Result<QuadPoly> {
        Ok(self.div_rem(g)?.1)
    }

    pub fn gcd(&self, g: &QuadPoly) -> QuadPoly {
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    pub fn eval(&self, x: &QuadElem) -> QuadElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluates at a polynomial argument, reducing modulo `m`.
    pub fn compose_mod(&self, x: &QuadPoly, m: &QuadPoly) -> Result<QuadPoly> {
        let mut acc = QuadPoly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QuadPoly::constant(c.clone())).rem(m)?;
        }
        Ok(acc)
    }

    /// Inverse modulo `m`, when `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &QuadPoly) -> Result<QuadPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m)?);
        let (mut s0, mut s1) = (QuadPoly::zero(self.field), QuadPoly::constant(self.field.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return Err(Error::Precondition("polynomial is not invertible modulo m".into()));
        }
        let c = r0.lc().inv()?;
        s0.scale(&c).rem(m)
    }
}

fn fmt_coeff(c: &QuadElem) -> String {
    if c.is_rational() {
        c.a.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_rational() && c.a.is_negative();
            let mag = if neg { -c } else { c.clone() };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            let body = if i == 0 {
                fmt_coeff(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_coeff(&mag), mono)
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// Determinant over `Q(√d)` by Gaussian elimination.
fn det(mut m: Vec<Vec<QuadElem>>, field: QuadField) -> QuadElem {
    let n = m.len();
    let mut acc = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc = &acc * &p;
        let pinv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &pinv;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] = &m[r][c] - &v;
            }
        }
    }
    acc
}

/// The Sylvester resultant, `Res(f, g) = lc(f)^deg g · Π_{f(α)=0} g(α)`.
///
/// With this orientation `Res(u − a, u − b) = a − b`, and for monic `p`
/// the norm of `f(a_p)` from `l(a_p)` down to `l` is `Res(p, f)`.
pub fn resultant(f: &QuadPoly, g: &QuadPoly) -> Result<QuadElem> {
    let field = f.field();
    let m = f.degree().ok_or(Error::ZeroInput("resultant of zero polynomial"))?;
    let n = g.degree().ok_or(Error::ZeroInput("resultant of zero polynomial"))?;
    if m == 0 {
        return Ok(f.lc().pow(n as i64));
    }
    if n == 0 {
        return Ok(g.lc().pow(m as i64));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![field.zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![field.zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(det(rows, field))
}
