//! `Br(l)₂` for `l = Q(√d)` as finitely supported vectors of 2-primary
//! local invariants, with the Galois action, quaternion and conic
//! splitting, and the invariant-level constructions of `β_i` and `γ`.
//!
//! Balancing places default to the smallest inert place with zero
//! invariant, then the smallest ramified one.

mod conic;
mod construct;
mod elem;
mod place;

pub use conic::{conic_parametrize, conic_point_search, conic_uncoordinate, quaternion_splits, SplitReport};
pub use construct::{
    balancing_candidates, construct_beta_i, construct_beta_i_with, construct_gamma, construct_gamma_with,
};
pub use elem::{BrauerElem, UNIVERSE_EXTRA};
pub use place::{small_nonsplit_places, split_root, splitting_type, PlaceL, SplitKind};
