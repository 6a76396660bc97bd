//! Error type shared by every module in the crate.
//!
//! Variants are grouped by the stage that raises them: state/projector
//! validation, distribution consistency, graph structure, LP solving, and
//! optimizer convergence. Each variant carries enough context to print a
//! useful one-line diagnostic.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A state vector or projector direction is not normalized to unit norm.
    #[error("vector is not normalized: |norm - 1| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotNormalized {
        /// Absolute deviation of the norm from 1.
        deviation: f64,
        /// Tolerance that was applied.
        tolerance: f64,
    },

    /// Two projectors that must commute (be orthogonal) fail to do so.
    #[error("projectors {first} and {second} are not orthogonal: |<a|b>| = {overlap:.3e} exceeds {tolerance:.3e}")]
    NotOrthogonal {
        /// Index of the first projector (0-based).
        first: usize,
        /// Index of the second projector (0-based).
        second: usize,
        /// Magnitude of the offending overlap.
        overlap: f64,
        /// Tolerance that was applied.
        tolerance: f64,
    },

    /// A parameter lies outside its mathematical domain.
    #[error("parameter {name} = {value} outside domain {domain}")]
    ParameterOutOfDomain {
        /// Parameter name as it appears in the API.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// Human-readable domain description.
        domain: &'static str,
    },

    /// A construction degenerates (e.g. a cross product of parallel vectors).
    #[error("degenerate configuration: {reason}")]
    DegenerateConfiguration {
        /// What collapsed.
        reason: String,
    },

    /// A probability table fails to be a distribution (negative entries or
    /// a total that is not 1 within tolerance).
    #[error("invalid distribution: {reason}")]
    InvalidDistribution {
        /// What check failed.
        reason: String,
    },

    /// A graph does not have the structure an operation requires.
    #[error("wrong graph structure: {reason}")]
    WrongStructure {
        /// Which structural requirement failed.
        reason: String,
    },

    /// Two pairwise tables disagree on a shared single-variable marginal.
    #[error("inconsistent marginals for variable {variable}: p(1) = {left:.12} vs {right:.12} (difference {difference:.3e} exceeds {tolerance:.3e})")]
    InconsistentMarginals {
        /// The shared variable.
        variable: usize,
        /// Marginal from one table.
        left: f64,
        /// Marginal from the other table.
        right: f64,
        /// Absolute difference.
        difference: f64,
        /// Tolerance that was applied.
        tolerance: f64,
    },

    /// A variable index is not present in the structure being queried.
    #[error("unknown variable {variable} (structure has {count} variables)")]
    UnknownVariable {
        /// The offending index.
        variable: usize,
        /// Number of variables actually present.
        count: usize,
    },

    /// A requested problem size exceeds a hard limit.
    #[error("problem too large: {what} = {got}, limit is {limit}")]
    TooLarge {
        /// Which dimension overflowed.
        what: &'static str,
        /// Requested size.
        got: usize,
        /// Hard limit.
        limit: usize,
    },

    /// The LP solver failed to make progress (should not happen with Bland's
    /// rule; kept as a guard against numerical breakdown).
    #[error("solver failure: {reason}")]
    SolverFailure {
        /// Diagnostic message.
        reason: String,
    },

    /// An iterative optimizer stopped without meeting its convergence
    /// criterion.
    #[error("optimizer did not converge within {iterations} iterations")]
    NonConvergence {
        /// Iterations performed before giving up.
        iterations: usize,
    },
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
