use super::descriptor::{GroupDescriptor, SummandKind};
use super::oracle::Truncation;
use super::ordinal::Ordinal;
use crate::error::{Error, Result};

fn summand_ulm(kind: SummandKind, lambda: Ordinal) -> u64 {
    match (kind, lambda) {
        (SummandKind::Cyclic(n), Ordinal::Finite(m)) => u64::from(m + 1 == n),
        (SummandKind::Cyclic(_), _) | (SummandKind::Pruefer, _) => 0,
        (SummandKind::GenPruefer(_), Ordinal::Finite(_)) => 1,
        (SummandKind::GenPruefer(n), Ordinal::OmegaPlus(j)) => u64::from(j + 1 == n),
        (SummandKind::GenPruefer(_), _) => 0,
    }
}

/// `U₂(λ)`, summed over the per-summand tables.
pub fn ulm_invariant(g: &GroupDescriptor, lambda: Ordinal) -> Result<u64> {
    if lambda == Ordinal::Infinity {
        return Err(Error::Precondition(
            "Ulm invariants are indexed by ordinals, not ∞".into(),
        ));
    }
    Ok(g.summands.iter().map(|&s| summand_ulm(s, lambda)).sum())
}

/// Rank of the divisible part.
pub fn divisible_rank(g: &GroupDescriptor) -> usize {
    g.summands.iter().filter(|&&s| s == SummandKind::Pruefer).count()
}

/// `U₂(λ)` read off a truncation at level `k`.
pub fn ulm_invariant_oracle(g: &GroupDescriptor, lambda: Ordinal, k: u32) -> Result<u64> {
    Truncation::new(g, k)?.ulm(lambda)
}
