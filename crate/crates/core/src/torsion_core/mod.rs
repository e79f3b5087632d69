//! Structured countable abelian 2-groups: finite sums of cyclic, Prüfer
//! and generalized Prüfer summands, their elements and heights up to
//! `ω2`, Ulm invariants, divisible towers, and the decomposition of a
//! divisible group with involution into fixed, negated and swapped parts.
//!
//! Height convention: the zero element has height `∞`, as does every
//! element of the divisible subgroup.

mod descriptor;
mod group;
mod inp;
mod oracle;
mod ordinal;
pub mod smith;
mod tower;
mod ulm;

pub use descriptor::{parse_descriptor, ActionTag, GroupDescriptor, InvolutionSpec, SummandKind, MAX_ORDER_EXP};
pub use group::{summand_torsion, Coord, Group, GroupElem, MAX_GEN_INDEX};
pub use inp::{inp_decompose, InpDecomposition, DEFAULT_TOWER_DEPTH};
pub use oracle::{height_bruteforce, truncation_level, HeightBound, Truncation, DEFAULT_TRUNCATION, MAX_TRUNCATION};
pub use ordinal::Ordinal;
pub use tower::{build_fixed_tower, verify_tower, CorMap, FixedTower, Tower};
pub use ulm::{divisible_rank, ulm_invariant, ulm_invariant_oracle};
