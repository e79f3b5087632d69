use std::fmt;

use gzb_core::brauer_local::{conic_point_search, quaternion_splits};
use gzb_core::error::Error;
use gzb_core::exact_algebra::{
    hilbert_symbol, parse_quad, parse_rational, relevant_places, square_class, PlaceQ, QuadField, Rational,
};
use gzb_core::kummer_chars::{cyclic_quartic_criterion, w_membership, WClass};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CERTIFICATE_VERSION: u32 = 1;
pub const DEFAULT_CONIC_BOUND: u64 = 10_000;

/// Generator of the first layer of the cyclotomic `Z₂`-extension over `Q(√2)`:
/// `Q(√(2+√2))` is the real subfield of `Q(ζ₁₆)`.
pub const FIRST_LAYER_GENERATOR: &str = "2+sqrt(2)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    RationalConic,
    IsomorphicToBrQt,
    OutOfScope,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::RationalConic => "RationalConic",
            Status::IsomorphicToBrQt => "IsomorphicToBrQt",
            Status::OutOfScope => "OutOfScope",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub c: String,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub c_class: String,
    pub d_class: String,
    pub d_in_class_of_2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSymbol {
    pub place: String,
    pub symbol: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicSearch {
    pub bound: u64,
    /// `[x, y]` with `c x² + d y² = 1`, or `null` when none was found.
    pub result: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WCheck {
    pub e: String,
    pub norm: String,
    pub classification: String,
    pub cyclic_criterion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub status: Status,
    pub witnesses: Vec<String>,
    pub explanation: String,
}

/// Every check behind a verdict, in a fixed key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub inputs: Inputs,
    pub square_class_normalization: Normalization,
    pub local_symbols: Vec<LocalSymbol>,
    pub conic_search: ConicSearch,
    pub w_check: Option<WCheck>,
    pub verdict: VerdictRecord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn witnesses(&self) -> &[String] {
        &self.certificate.verdict.witnesses
    }
}

fn run_w_check() -> CliResult<WCheck> {
    let l = QuadField::new(2)?;
    let e = parse_quad(FIRST_LAYER_GENERATOR, l)?;
    let class = w_membership(&e)?;
    Ok(WCheck {
        e: FIRST_LAYER_GENERATOR.to_string(),
        norm: e.norm().to_string(),
        classification: class.to_string(),
        cyclic_criterion: cyclic_quartic_criterion(&e),
    })
}

fn verdict_from(symbols: &[LocalSymbol], d_in_class_of_2: bool, w: Option<&WCheck>) -> CliResult<VerdictRecord> {
    let witnesses: Vec<String> = symbols
        .iter()
        .filter(|s| s.symbol == -1)
        .map(|s| s.place.clone())
        .collect();
    if witnesses.is_empty() {
        return Ok(VerdictRecord {
            status: Status::RationalConic,
            witnesses,
            explanation: "all local symbols are +1: the conic has a rational point and E = Q(t)".into(),
        });
    }
    if !d_in_class_of_2 {
        return Ok(VerdictRecord {
            status: Status::OutOfScope,
            witnesses,
            explanation: "the conic is not split by Q(sqrt(2)): d is not in the square class of 2".into(),
        });
    }
    let w = w.ok_or_else(|| CliError::Failed("W check missing".into()))?;
    if w.classification != WClass::Cyclic4.to_string() || !w.cyclic_criterion {
        return Err(CliError::Failed(format!(
            "W check failed: l(sqrt({})) is {}",
            w.e, w.classification
        )));
    }
    Ok(VerdictRecord {
        status: Status::IsomorphicToBrQt,
        witnesses,
        explanation: format!(
            "nonsplit conic split by Q(sqrt(2)); l(sqrt({})) / Q is cyclic of order 4, so W = 0 and Br(E) = Br(Q(t))",
            w.e
        ),
    })
}

fn check_point(c: &Rational, d: &Rational, x: &Rational, y: &Rational) -> bool {
    c * x * x + d * y * y == Rational::from_integer(1.into())
}

/// Runs the verdict pipeline for the conic `c x² + d y² = 1`.
pub fn cmd_check(c: &Rational, d: &Rational, conic_bound: u64) -> CliResult<Verdict> {
    if c.is_zero() || d.is_zero() {
        return Err(Error::ZeroInput("check needs c, d ≠ 0").into());
    }
    let c_class = square_class(c)?;
    let d_class = square_class(d)?;
    let d_in_class_of_2 = d_class == BigInt::from(2);
    let report = quaternion_splits(c, d)?;
    let local_symbols: Vec<LocalSymbol> = report
        .symbols
        .iter()
        .map(|(v, s)| LocalSymbol {
            place: v.to_string(),
            symbol: *s,
        })
        .collect();
    let point = conic_point_search(c, d, conic_bound)?;
    if let Some((x, y)) = &point {
        if !report.splits || !check_point(c, d, x, y) {
            return Err(CliError::Failed(format!(
                "conic point ({x}, {y}) contradicts the local symbols"
            )));
        }
    }
    let w_check = (!report.splits && d_in_class_of_2).then(run_w_check).transpose()?;
    let verdict = verdict_from(&local_symbols, d_in_class_of_2, w_check.as_ref())?;
    let certificate = Certificate {
        version: CERTIFICATE_VERSION,
        inputs: Inputs {
            c: c.to_string(),
            d: d.to_string(),
        },
        square_class_normalization: Normalization {
            c_class: c_class.to_string(),
            d_class: d_class.to_string(),
            d_in_class_of_2,
        },
        local_symbols,
        conic_search: ConicSearch {
            bound: conic_bound,
            result: point.map(|(x, y)| [x.to_string(), y.to_string()]),
        },
        w_check,
        verdict,
    };
    Ok(Verdict {
        status: certificate.verdict.status,
        certificate,
    })
}

fn mismatch(what: &str) -> CliError {
    CliError::Failed(format!("certificate replay: {what}"))
}

/// Re-derives every recorded value from the inputs and the recorded data,
/// returning the reproduced status.
pub fn replay(cert: &Certificate) -> CliResult<Status> {
    if cert.version != CERTIFICATE_VERSION {
        return Err(mismatch(&format!("unknown version {}", cert.version)));
    }
    let c = parse_rational(&cert.inputs.c)?;
    let d = parse_rational(&cert.inputs.d)?;
    let n = &cert.square_class_normalization;
    if square_class(&c)?.to_string() != n.c_class || square_class(&d)?.to_string() != n.d_class {
        return Err(mismatch("square classes"));
    }
    if n.d_in_class_of_2 != (n.d_class == "2") {
        return Err(mismatch("class-of-2 flag"));
    }
    let places: Vec<String> = relevant_places(&c, &d)?.iter().map(ToString::to_string).collect();
    let recorded: Vec<String> = cert.local_symbols.iter().map(|s| s.place.clone()).collect();
    if places != recorded {
        return Err(mismatch("place list"));
    }
    let mut product = 1i8;
    for s in &cert.local_symbols {
        let v = PlaceQ::parse(&s.place)?;
        if hilbert_symbol(&c, &d, v)? != s.symbol {
            return Err(mismatch(&format!("symbol at {}", s.place)));
        }
        product *= s.symbol;
    }
    if product != 1 {
        return Err(mismatch("product formula"));
    }
    let splits = cert.local_symbols.iter().all(|s| s.symbol == 1);
    if let Some([x, y]) = &cert.conic_search.result {
        if !splits || !check_point(&c, &d, &parse_rational(x)?, &parse_rational(y)?) {
            return Err(mismatch("conic point"));
        }
    }
    if let Some(w) = &cert.w_check {
        let fresh = run_w_check()?;
        let l = QuadField::new(2)?;
        let e = parse_quad(&w.e, l)?;
        if e.norm().to_string() != w.norm || fresh.e != w.e || fresh != *w {
            return Err(mismatch("W check"));
        }
    }
    let again = verdict_from(&cert.local_symbols, n.d_in_class_of_2, cert.w_check.as_ref())?;
    if again != cert.verdict {
        return Err(mismatch("verdict"));
    }
    Ok(again.status)
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.certificate;
        writeln!(f, "conic: {} x^2 + {} y^2 = 1", c.inputs.c, c.inputs.d)?;
        writeln!(
            f,
            "square classes: c ~ {}, d ~ {}",
            c.square_class_normalization.c_class, c.square_class_normalization.d_class
        )?;
        let syms: Vec<String> = c
            .local_symbols
            .iter()
            .map(|s| format!("{}:{:+}", s.place, s.symbol))
            .collect();
        writeln!(f, "local symbols: {}", syms.join(" "))?;
        match &c.conic_search.result {
            Some([x, y]) => writeln!(f, "conic point: ({x}, {y}) within bound {}", c.conic_search.bound)?,
            None => writeln!(f, "conic point: none within bound {}", c.conic_search.bound)?,
        }
        if let Some(w) = &c.w_check {
            writeln!(f, "W check: e = {}, N(e) = {}, {}", w.e, w.norm, w.classification)?;
        }
        if !c.verdict.witnesses.is_empty() {
            writeln!(f, "witnesses: {{{}}}", c.verdict.witnesses.join(","))?;
        }
        writeln!(f, "explanation: {}", c.verdict.explanation)?;
        write!(f, "verdict: {}", self.status)
    }
}
