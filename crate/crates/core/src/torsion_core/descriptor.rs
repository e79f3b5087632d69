use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order exponent for cyclic summands and generalized
/// Prüfer tops (coordinates are stored in `u64`).
pub const MAX_ORDER_EXP: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandKind {
    /// `Z/2^n`.
    Cyclic(u32),
    /// `Q₂/Z₂`.
    Pruefer,
    /// Generated by `e_k` (`k ≥ 1`) and `x` with `2^k e_k = x`, `2^n x = 0`;
    /// reduced of Ulm length `ω + n`.
    GenPruefer(u32),
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandKind::Cyclic(n) => write!(f, "C{n}"),
            SummandKind::Pruefer => write!(f, "P"),
            SummandKind::GenPruefer(n) => write!(f, "G{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionTag {
    Fixed,
    Negated,
    /// Exchanged with the summand at the given index.
    Swap(usize),
}

/// An order-2 automorphism of a descriptor group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InvolutionSpec {
    Tags(Vec<ActionTag>),
    /// Integer matrix acting on column vectors of an all-Prüfer group.
    Matrix(Vec<Vec<i64>>),
}

impl InvolutionSpec {
    /// The action as an `r × r` integer matrix on column vectors; tags
    /// become signed permutation matrices.
    pub fn to_matrix(&self, r: usize) -> Vec<Vec<i64>> {
        match self {
            InvolutionSpec::Matrix(m) => m.clone(),
            InvolutionSpec::Tags(tags) => {
                let mut m = vec![vec![0i64; r]; r];
                for (i, t) in tags.iter().enumerate() {
                    match *t {
                        ActionTag::Fixed => m[i][i] = 1,
                        ActionTag::Negated => m[i][i] = -1,
                        ActionTag::Swap(j) => m[j][i] = 1,
                    }
                }
                m
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub summands: Vec<SummandKind>,
    pub action: Option<InvolutionSpec>,
}

pub(crate) fn matrix_is_involution(m: &[Vec<i64>]) -> bool {
    let r = m.len();
    if m.iter().any(|row| row.len() != r) {
        return false;
    }
    (0..r).all(|i| {
        (0..r).all(|j| {
            let s: i128 = (0..r).map(|k| m[i][k] as i128 * m[k][j] as i128).sum();
            s == i128::from(i == j)
        })
    })
}

impl GroupDescriptor {
    pub fn new(summands: Vec<SummandKind>, action: Option<InvolutionSpec>) -> Result<Self> {
        for s in &summands {
            match *s {
                SummandKind::Cyclic(n) | SummandKind::GenPruefer(n) if n == 0 || n > MAX_ORDER_EXP => {
                    return Err(Error::OutOfRange(format!(
                        "{s}: exponent must be in 1..={MAX_ORDER_EXP}"
                    )));
                }
                _ => {}
            }
        }
        match &action {
            None => {}
            Some(InvolutionSpec::Tags(tags)) => {
                if tags.len() != summands.len() {
                    return Err(Error::DescriptorMismatch(format!(
                        "{} action tags for {} summands",
                        tags.len(),
                        summands.len()
                    )));
                }
                for (i, t) in tags.iter().enumerate() {
                    if let ActionTag::Swap(j) = *t {
                        if j >= tags.len() || j == i || tags[j] != ActionTag::Swap(i) {
                            return Err(Error::NotInvolution(format!("swap partner of {i} is not paired back")));
                        }
                        if summands[i] != summands[j] {
                            return Err(Error::NotInvolution(format!(
                                "swap({i},{j}) joins different summand kinds"
                            )));
                        }
                    }
                }
            }
            Some(InvolutionSpec::Matrix(m)) => {
                if summands.iter().any(|s| *s != SummandKind::Pruefer) {
                    return Err(Error::DescriptorMismatch(
                        "matrix actions need an all-Prüfer group".into(),
                    ));
                }
                if m.len() != summands.len() {
                    return Err(Error::DescriptorMismatch("matrix size differs from rank".into()));
                }
                if !matrix_is_involution(m) {
                    return Err(Error::NotInvolution("M² ≠ I".into()));
                }
            }
        }
        Ok(GroupDescriptor { summands, action })
    }

    pub fn plain(summands: Vec<SummandKind>) -> Self {
        GroupDescriptor::new(summands, None).expect("valid summands")
    }

    pub fn pruefer_rank(r: usize) -> Self {
        GroupDescriptor::plain(vec![SummandKind::Pruefer; r])
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_all_pruefer(&self) -> bool {
        self.summands.iter().all(|s| *s == SummandKind::Pruefer)
    }

    pub fn with_action(&self, action: InvolutionSpec) -> Result<Self> {
        GroupDescriptor::new(self.summands.clone(), Some(action))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("+"))?;
        match &self.action {
            None => Ok(()),
            Some(InvolutionSpec::Tags(tags)) => {
                let mut out = Vec::new();
                for (i, t) in tags.iter().enumerate() {
                    match *t {
                        ActionTag::Fixed => out.push("fixed".to_string()),
                        ActionTag::Negated => out.push("neg".to_string()),
                        ActionTag::Swap(j) if i < j => out.push(format!("swap({i},{j})")),
                        ActionTag::Swap(_) => {}
                    }
                }
                write!(f, " | {}", out.join(","))
            }
            Some(InvolutionSpec::Matrix(m)) => {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, " | matrix [{}]", rows.join(","))
            }
        }
    }
}

fn parse_summand(tok: &str, pos: usize) -> Result<SummandKind> {
    let exp = |rest: &str| -> Result<u32> {
        rest.parse::<u32>()
            .map_err(|_| Error::parse(pos + 1, format!("expected an exponent after '{}'", &tok[..1])))
    };
    match tok.as_bytes().first() {
        Some(b'C') => Ok(SummandKind::Cyclic(exp(&tok[1..])?)),
        Some(b'G') => Ok(SummandKind::GenPruefer(exp(&tok[1..])?)),
        Some(b'P') if tok.len() == 1 => Ok(SummandKind::Pruefer),
        _ => Err(Error::parse(pos, format!("unknown summand {tok:?}"))),
    }
}

/// Splits on `sep` at bracket depth zero, returning `(offset, piece)`.
fn split_top(s: &str, sep: u8) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, &c) in s.as_bytes().iter().enumerate() {
        match c {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn trimmed(off: usize, piece: &str) -> (usize, &str) {
    let lead = piece.len() - piece.trim_start().len();
    (off + lead, piece.trim())
}

fn parse_matrix(s: &str, base: usize) -> Result<Vec<Vec<i64>>> {
    let (off, t) = trimmed(base, s);
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::parse(off, "matrix must be [[..],..]"))?;
    let mut rows = Vec::new();
    for (o, row) in split_top(inner, b',') {
        let (ro, r) = trimmed(off + 1 + o, row);
        let body = r
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::parse(ro, "matrix row must be [..]"))?;
        let mut vals = Vec::new();
        for (eo, e) in split_top(body, b',') {
            let (ep, et) = trimmed(ro + 1 + eo, e);
            vals.push(
                et.parse::<i64>()
                    .map_err(|_| Error::parse(ep, format!("bad matrix entry {et:?}")))?,
            );
        }
        rows.push(vals);
    }
    Ok(rows)
}

fn parse_tags(s: &str, base: usize, n: usize) -> Result<Vec<ActionTag>> {
    let mut tags: Vec<Option<ActionTag>> = vec![None; n];
    let next_free = |tags: &Vec<Option<ActionTag>>, pos: usize| {
        tags.iter()
            .position(|t| t.is_none())
            .ok_or_else(|| Error::parse(pos, "more action tags than summands"))
    };
    for (o, piece) in split_top(s, b',') {
        let (pos, tok) = trimmed(base + o, piece);
        match tok {
            "fixed" => {
                let i = next_free(&tags, pos)?;
                tags[i] = Some(ActionTag::Fixed);
            }
            "neg" => {
                let i = next_free(&tags, pos)?;
                tags[i] = Some(ActionTag::Negated);
            }
            _ if tok.starts_with("swap(") && tok.ends_with(')') => {
                let args: Vec<&str> = tok[5..tok.len() - 1].split(',').map(str::trim).collect();
                let ij: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
                if args.len() != 2 || ij.len() != 2 {
                    return Err(Error::parse(pos, "swap needs two summand indices"));
                }
                let (i, j) = (ij[0], ij[1]);
                if i >= n || j >= n || i == j {
                    return Err(Error::parse(pos, format!("swap({i},{j}) out of range")));
                }
                if tags[i].is_some() || tags[j].is_some() {
                    return Err(Error::parse(
                        pos,
                        format!("summand in swap({i},{j}) already has an action"),
                    ));
                }
                tags[i] = Some(ActionTag::Swap(j));
                tags[j] = Some(ActionTag::Swap(i));
            }
            _ => return Err(Error::parse(pos, format!("unknown action {tok:?}"))),
        }
    }
    tags.into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| Error::parse(base + s.len(), format!("summand {i} has no action"))))
        .collect()
}

/// Parses `C<n>`, `P`, `G<n>` joined by `+`, with an optional action
/// suffix `| fixed,neg,swap(i,j),...` (0-based indices; `fixed`/`neg`
/// fill the lowest summand without an action) or `| matrix [[..],..]`.
pub fn parse_descriptor(s: &str) -> Result<GroupDescriptor> {
    let (group, action) = match s.find('|') {
        Some(i) => (&s[..i], Some((i + 1, &s[i + 1..]))),
        None => (s, None),
    };
    let mut summands = Vec::new();
    for (off, piece) in group.split('+').scan(0usize, |acc, p| {
        let o = *acc;
        *acc += p.len() + 1;
        Some((o, p))
    }) {
        let (pos, tok) = trimmed(off, piece);
        if tok.is_empty() {
            return Err(Error::parse(pos, "empty summand"));
        }
        summands.push(parse_summand(tok, pos)?);
    }
    let action = match action {
        None => None,
        Some((off, a)) => {
            let (pos, t) = trimmed(off, a);
            if let Some(rest) = t.strip_prefix("matrix") {
                Some(InvolutionSpec::Matrix(parse_matrix(rest, pos + 6)?))
            } else {
                Some(InvolutionSpec::Tags(parse_tags(t, pos, summands.len())?))
            }
        }
    };
    GroupDescriptor::new(summands, action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let g = parse_descriptor("C1+C3+P | fixed,fixed,neg").unwrap();
        assert_eq!(
            g.summands,
            vec![SummandKind::Cyclic(1), SummandKind::Cyclic(3), SummandKind::Pruefer]
        );
        assert_eq!(
            g.action,
            Some(InvolutionSpec::Tags(vec![
                ActionTag::Fixed,
                ActionTag::Fixed,
                ActionTag::Negated
            ]))
        );
        assert_eq!(g.to_string(), "C1+C3+P | fixed,fixed,neg");
        let h = parse_descriptor("P+P+P | swap(0,2), fixed").unwrap();
        assert_eq!(h.to_string(), "P+P+P | swap(0,2),fixed");
        let m = parse_descriptor("P+P | matrix [[0,1],[1,0]]").unwrap();
        assert_eq!(parse_descriptor(&m.to_string()).unwrap(), m);
        assert_eq!(
            parse_descriptor("G2").unwrap().summands,
            vec![SummandKind::GenPruefer(2)]
        );
    }

    #[test]
    fn rejects_bad_input() {
        match parse_descriptor("C1+Q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_descriptor("C1+P | swap(0,1)").is_err());
        assert!(parse_descriptor("P+P | matrix [[1,1],[0,1]]").is_err());
        assert!(parse_descriptor("C1+P | matrix [[1,0],[0,1]]").is_err());
        assert!(parse_descriptor("C0").is_err());
        assert!(parse_descriptor("C1 | fixed,fixed").is_err());
        assert!(parse_descriptor("C1+C1 | fixed").is_err());
    }
}
