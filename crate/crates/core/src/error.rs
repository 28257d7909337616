//! Error taxonomy shared by every module in the crate.
//!
//! The variants are grouped so that a caller (in particular the CLI) can map
//! them onto coarse outcomes: malformed input (`DimensionMismatch`,
//! `InvalidParameter`, `Parse`), points outside a kernel's domain
//! (`DomainViolation`), analytically unavailable closed forms (`Infeasible`),
//! fixed-precision overflow (`Range`), enumeration limits (`CapExceeded`) and
//! tolerance-level ambiguity in float inputs (`AmbiguousPartition`).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirimixError {
    /// Vector or matrix dimensions that must agree do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter violates its constructor contract (non-positive entry,
    /// weight outside (0, 1], duplicate atoms, malformed topic matrix, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A point lies outside the domain of the requested evaluation
    /// (simplex boundary, orthant boundary, discrete family asked for a
    /// density, series evaluated outside its disc of convergence).
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// A closed form does not exist for the given inputs (for example a
    /// pairwise product of densities that is not integrable).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Fixed-precision overflow or a failure to terminate within the
    /// documented retry budget.
    #[error("range error: {0}")]
    Range(String),

    /// An enumeration grew past a documented cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// Float inputs whose integer-difference relation is not transitive at
    /// the requested tolerance; the congruence partition is ill-defined.
    #[error("ambiguous congruence partition: {0}")]
    AmbiguousPartition(String),

    /// Malformed textual input (JSON artifacts, rational literals).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, DirimixError>;
