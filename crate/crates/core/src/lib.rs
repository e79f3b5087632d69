//! Exact arithmetic for Brauer groups of quadratic fields, the order-2
//! Kummer character layer of `l(u)`, and heights/Ulm invariants of
//! structured countable abelian 2-groups.
//!
//! Everything is exact: rationals are arbitrary precision and there is no
//! floating point anywhere in the crate.

pub mod brauer_local;
pub mod error;
pub mod exact_algebra;
pub mod kummer_chars;
pub mod par;
pub mod torsion_core;

pub use error::{Error, Result};
