//! Verdict pipeline, tower lifting through quotient models, report
//! formatting and the self-test suites behind the `gzb` binary.

pub mod error;
pub mod gen;
pub mod lift;
pub mod pipeline;
pub mod reports;
pub mod selftest;

pub use error::{CliError, CliResult};
