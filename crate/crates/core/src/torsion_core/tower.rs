use num_bigint::BigInt;

use super::descriptor::{ActionTag, GroupDescriptor, InvolutionSpec, SummandKind};
use super::group::{Coord, Group, GroupElem};
use crate::error::{Error, Result};
use crate::exact_algebra::Dyadic;

/// A finite prefix `α_0, α_1, …` of a divisible tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub elems: Vec<GroupElem>,
}

impl Tower {
    pub fn new(elems: Vec<GroupElem>) -> Self {
        Tower { elems }
    }

    pub fn zero(g: &Group, depth: usize) -> Self {
        Tower {
            elems: vec![g.zero(); depth],
        }
    }

    /// `α_i = v / 2^(i+1)` in `(Q₂/Z₂)^r`.
    pub fn over_vector(v: &[i64], depth: usize) -> Self {
        let elems = (0..depth)
            .map(|i| GroupElem::pruefer(v.iter().map(|&x| Dyadic::new(x, i as u32 + 1)).collect()))
            .collect();
        Tower { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// Checks `2^j α_i = α_{i-j}` for all `i ≤ upto`, `j ≤ i`.
pub fn verify_tower(g: &Group, t: &Tower, upto: usize) -> bool {
    if upto >= t.len() || t.elems.iter().any(|x| g.validate(x).is_err()) {
        return false;
    }
    (0..=upto).all(|i| {
        let mut y = t.elems[i].clone();
        (0..=i).all(|j| {
            if j > 0 {
                y = g.scale_unchecked(&y, 2);
            }
            y == t.elems[i - j]
        })
    })
}

/// A homomorphism `(Q₂/Z₂)^s → (Q₂/Z₂)^t` given by a `t × s` integer
/// matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorMap {
    pub matrix: Vec<Vec<i64>>,
}

impl CorMap {
    pub fn new(matrix: Vec<Vec<i64>>) -> Self {
        CorMap { matrix }
    }

    pub fn zero(target_rank: usize, source_rank: usize) -> Self {
        CorMap {
            matrix: vec![vec![0; source_rank]; target_rank],
        }
    }

    pub fn apply(&self, x: &GroupElem) -> Result<GroupElem> {
        let qs = x
            .coords
            .iter()
            .map(|c| match c {
                Coord::Pru(q) => Ok(q),
                _ => Err(Error::DescriptorMismatch(
                    "corestriction source must be all-Prüfer".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        let out = self
            .matrix
            .iter()
            .map(|row| {
                if row.len() != qs.len() {
                    return Err(Error::DescriptorMismatch(
                        "corestriction matrix width differs from source rank".into(),
                    ));
                }
                Ok(row.iter().zip(&qs).map(|(&m, q)| q.mul_int(&BigInt::from(m))).sum())
            })
            .collect::<Result<Vec<Dyadic>>>()?;
        Ok(GroupElem::pruefer(out))
    }
}

/// Output of [`build_fixed_tower`].
#[derive(Debug, Clone)]
pub struct FixedTower {
    /// Target ⊕ source, with the block-diagonal action.
    pub group: Group,
    pub chi_u: Tower,
    /// `χ_u^(i) ⊕ χ^(i)`.
    pub combined: Tower,
    /// `-Cor χ^(i)` for every input level.
    pub cor_images: Vec<GroupElem>,
}

fn project(x: &GroupElem, keep: &[bool]) -> GroupElem {
    let coords = x
        .coords
        .iter()
        .zip(keep)
        .map(|(c, &k)| if k { c.clone() } else { Coord::Pru(Dyadic::zero()) })
        .collect();
    GroupElem::new(coords)
}

/// From a divisible tower `χ^(i)` in the source and a corestriction into
/// a target split as `I ⊕ N ⊕ P`, builds
/// `χ_u^(i) = (-Cor χ^(i+1))_I + (-Cor χ^(i))_P̂`, where `P̂` takes the
/// first summand of every swapped pair. The result has one level fewer
/// than the input tower.
pub fn build_fixed_tower(cor: &CorMap, source: &Group, tower: &Tower, target: &Group) -> Result<FixedTower> {
    let tags = match &target.descriptor().action {
        Some(InvolutionSpec::Tags(t)) if target.descriptor().is_all_pruefer() => t.clone(),
        _ => {
            return Err(Error::Precondition(
                "target must be all-Prüfer with fixed/neg/swap tags".into(),
            ))
        }
    };
    let src_action = match &source.descriptor().action {
        Some(a) if source.descriptor().is_all_pruefer() => a.to_matrix(source.summands().len()),
        _ => {
            return Err(Error::Precondition(
                "source must be all-Prüfer with an involution".into(),
            ))
        }
    };
    if tower.len() < 2 || !verify_tower(source, tower, tower.len() - 1) {
        return Err(Error::Precondition(
            "input is not a divisible tower of length ≥ 2".into(),
        ));
    }
    if cor.matrix.len() != tags.len() {
        return Err(Error::DescriptorMismatch(
            "corestriction height differs from target rank".into(),
        ));
    }
    let mut ys = Vec::with_capacity(tower.len());
    for (i, chi) in tower.elems.iter().enumerate() {
        let y = target.neg(&cor.apply(chi)?)?;
        if target.act(&y)? != y {
            return Err(Error::Precondition(format!("Cor χ^({i}) is not σ-invariant")));
        }
        ys.push(y);
    }
    let fixed: Vec<bool> = tags.iter().map(|t| *t == ActionTag::Fixed).collect();
    let p_hat: Vec<bool> = tags
        .iter()
        .enumerate()
        .map(|(i, t)| matches!(*t, ActionTag::Swap(j) if i < j))
        .collect();
    let mut chi_u = Vec::with_capacity(tower.len() - 1);
    for i in 0..tower.len() - 1 {
        let c = target.add(&project(&ys[i + 1], &fixed), &project(&ys[i], &p_hat))?;
        let lhs = target.add(&c, &target.act(&c)?)?;
        if lhs != ys[i] {
            return Err(Error::Postcondition(format!("(1+σ)χ_u^({i}) ≠ -Cor χ^({i})")));
        }
        chi_u.push(c);
    }
    let rt = tags.len();
    let rs = source.summands().len();
    let tgt_matrix = InvolutionSpec::Tags(tags).to_matrix(rt);
    let mut block = vec![vec![0i64; rt + rs]; rt + rs];
    for i in 0..rt {
        block[i][..rt].copy_from_slice(&tgt_matrix[i]);
    }
    for i in 0..rs {
        block[rt + i][rt..].copy_from_slice(&src_action[i]);
    }
    let group = Group::new(GroupDescriptor::new(
        vec![SummandKind::Pruefer; rt + rs],
        Some(InvolutionSpec::Matrix(block)),
    )?);
    let combined: Vec<GroupElem> = chi_u
        .iter()
        .zip(&tower.elems)
        .map(|(u, x)| GroupElem::new(u.coords.iter().chain(&x.coords).cloned().collect()))
        .collect();
    let combined = Tower::new(combined);
    let chi_u = Tower::new(chi_u);
    if !verify_tower(target, &chi_u, chi_u.len() - 1) || !verify_tower(&group, &combined, combined.len() - 1) {
        return Err(Error::Postcondition(
            "constructed sequence violates the tower law".into(),
        ));
    }
    Ok(FixedTower {
        group,
        chi_u,
        combined,
        cor_images: ys,
    })
}
