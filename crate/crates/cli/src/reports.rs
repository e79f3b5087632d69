use std::fmt;

use gzb_core::error::Error;
use gzb_core::exact_algebra::{hilbert_bruteforce, hilbert_symbol, relevant_places, PlaceQ, Rational};
use gzb_core::torsion_core::{
    divisible_rank, inp_decompose, parse_descriptor, truncation_level, ulm_invariant, ulm_invariant_oracle, Ordinal,
    SummandKind,
};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct UlmEntry {
    pub lambda: String,
    pub value: u64,
    /// Truncation-oracle value, when verification ran and `λ` is certified.
    pub oracle: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UlmReport {
    pub descriptor: String,
    pub entries: Vec<UlmEntry>,
    pub omega2_nonzero: bool,
    pub divisible_rank: usize,
    pub truncation: Option<u32>,
}

pub fn cmd_ulm(descriptor: &str, verify: bool) -> CliResult<UlmReport> {
    let desc = parse_descriptor(descriptor)?;
    let cutoff = desc
        .summands
        .iter()
        .map(|k| match k {
            SummandKind::Cyclic(n) | SummandKind::GenPruefer(n) => *n,
            SummandKind::Pruefer => 0,
        })
        .max()
        .unwrap_or(0)
        .max(4)
        + 1;
    let k = verify.then(truncation_level);
    let lambdas = (0..=cutoff)
        .map(Ordinal::Finite)
        .chain((0..=cutoff).map(Ordinal::OmegaPlus));
    let mut entries = Vec::new();
    for l in lambdas {
        let value = ulm_invariant(&desc, l)?;
        let oracle = match k {
            Some(k) => match ulm_invariant_oracle(&desc, l, k) {
                Ok(v) => Some(v),
                Err(Error::OutOfRange(_)) => None,
                Err(e) => return Err(e.into()),
            },
            None => None,
        };
        if oracle.is_some_and(|o| o != value) {
            return Err(CliError::Failed(format!(
                "U({l}) = {value} but the truncation oracle gives {}",
                oracle.unwrap()
            )));
        }
        entries.push(UlmEntry {
            lambda: l.to_string(),
            value,
            oracle,
        });
    }
    Ok(UlmReport {
        descriptor: desc.to_string(),
        entries,
        omega2_nonzero: ulm_invariant(&desc, Ordinal::OmegaTwo)? > 0,
        divisible_rank: divisible_rank(&desc),
        truncation: k,
    })
}

impl fmt::Display for UlmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.descriptor)?;
        for e in &self.entries {
            match e.oracle {
                Some(o) => writeln!(f, "U({}) = {}  [oracle {}]", e.lambda, e.value, o)?,
                None => writeln!(f, "U({}) = {}", e.lambda, e.value)?,
            }
        }
        writeln!(f, "U(ω2) nonzero: {}", self.omega2_nonzero)?;
        if let Some(k) = self.truncation {
            writeln!(f, "verified against truncation at K = {k}")?;
        }
        write!(f, "divisible rank: {}", self.divisible_rank)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InpReport {
    pub rank: usize,
    pub i_rank: usize,
    pub n_rank: usize,
    pub p_pairs: usize,
    pub basis: Vec<Vec<i64>>,
    pub depth: usize,
    pub verified_level: u32,
}

pub const INP_VERIFY_LEVEL: u32 = 10;

pub fn cmd_inp(matrix_json: &str, depth: usize) -> CliResult<InpReport> {
    let m: Vec<Vec<i64>> = serde_json::from_str(matrix_json)
        .map_err(|e| CliError::Usage(format!("matrix is not a JSON integer matrix: {e}")))?;
    if depth < 2 {
        return Err(CliError::Usage("depth must be at least 2".into()));
    }
    let dec = inp_decompose(&m, depth)?;
    dec.verify(INP_VERIFY_LEVEL)?;
    let (i, n, p) = dec.summary();
    Ok(InpReport {
        rank: dec.rank(),
        i_rank: i,
        n_rank: n,
        p_pairs: p,
        basis: dec.basis(),
        depth,
        verified_level: INP_VERIFY_LEVEL,
    })
}

impl fmt::Display for InpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "I-rank: {}", self.i_rank)?;
        writeln!(f, "N-rank: {}", self.n_rank)?;
        writeln!(f, "P-pairs: {}", self.p_pairs)?;
        writeln!(f, "basis: {:?}", self.basis)?;
        write!(
            f,
            "verified: towers to depth {}, direct and exhaustive on 2^{}-torsion",
            self.depth, self.verified_level
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertRow {
    pub place: String,
    pub symbol: i8,
    /// Agreement with the mod-p^k solubility search when it applies.
    pub bruteforce: Option<i8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertReport {
    pub a: String,
    pub b: String,
    pub rows: Vec<HilbertRow>,
    pub product: i8,
}

pub fn cmd_hilbert(a: &Rational, b: &Rational, place: Option<PlaceQ>) -> CliResult<HilbertReport> {
    let places = match place {
        Some(v) => vec![v],
        None => relevant_places(a, b)?,
    };
    let ints = (a.is_integer() && b.is_integer()).then(|| (a.to_integer().to_i64(), b.to_integer().to_i64()));
    let mut rows = Vec::new();
    let mut product = 1i8;
    for v in places {
        let symbol = hilbert_symbol(a, b, v)?;
        let bruteforce = match (v, ints) {
            (PlaceQ::Prime(p), Some((Some(x), Some(y)))) => hilbert_bruteforce(x, y, p).ok(),
            _ => None,
        };
        if bruteforce.is_some_and(|s| s != symbol) {
            return Err(CliError::Failed(format!(
                "symbol at {v} disagrees with the solubility search"
            )));
        }
        product *= symbol;
        rows.push(HilbertRow {
            place: v.to_string(),
            symbol,
            bruteforce,
        });
    }
    Ok(HilbertReport {
        a: a.to_string(),
        b: b.to_string(),
        rows,
        product,
    })
}

impl fmt::Display for HilbertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let tag = if r.bruteforce.is_some() {
                "  [solubility search agrees]"
            } else {
                ""
            };
            writeln!(f, "({}, {})_{} = {:+}{tag}", self.a, self.b, r.place, r.symbol)?;
        }
        write!(f, "product over listed places: {:+}", self.product)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gzb_core::exact_algebra::int;

    #[test]
    fn ulm_examples() {
        let r = cmd_ulm("C1+C3+P", true).unwrap();
        let get = |l: &str| r.entries.iter().find(|e| e.lambda == l).unwrap().value;
        assert_eq!((get("0"), get("1"), get("2")), (1, 0, 1));
        assert_eq!(r.divisible_rank, 1);
        let p = cmd_ulm("P", false).unwrap();
        assert!(p.entries.iter().all(|e| e.value == 0));
        let g = cmd_ulm("G1", true).unwrap();
        assert!(g
            .entries
            .iter()
            .filter(|e| !e.lambda.starts_with('ω'))
            .all(|e| e.value == 1));
        assert!(matches!(
            cmd_ulm("C1+Q", false),
            Err(CliError::Core(Error::Parse { .. }))
        ));
    }

    #[test]
    fn inp_examples() {
        let r = cmd_inp("[[1,0],[0,1]]", 8).unwrap();
        assert_eq!(r.i_rank, 2);
        assert_eq!(cmd_inp("[[-1,0],[0,-1]]", 8).unwrap().n_rank, 2);
        assert_eq!(cmd_inp("[[0,1],[1,0]]", 8).unwrap().p_pairs, 1);
        assert_eq!(cmd_inp("[[1,1],[0,1]]", 8).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_inp("[[1,", 8).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn hilbert_rows() {
        let r = cmd_hilbert(&int(3), &int(2), None).unwrap();
        assert_eq!(r.product, 1);
        assert!(r
            .rows
            .iter()
            .any(|x| x.place == "3" && x.symbol == -1 && x.bruteforce == Some(-1)));
    }
}
