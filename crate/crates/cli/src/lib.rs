//! Certification pipelines and report plumbing behind the `pseudoauto` binary.

pub mod commands;
pub mod report;

pub use commands::{certify, classify_literal, degrees, orbit, parse_rational, torus, CertifyOptions, CliError, TorusOptions};
pub use report::{golden_check, Format, Report};
