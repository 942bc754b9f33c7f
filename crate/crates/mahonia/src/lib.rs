//! Permutation statistics, vincular patterns, Catalan bijections and exact
//! q-series algebra, together with an exhaustive equidistribution verifier.
//!
//! The crate is organised around a small set of value types:
//!
//! - [`Permutation`]: one-line-notation words on `[n]`, the universal object.
//! - [`VincularPattern`]: classical patterns extended with adjacency blocks,
//!   begin/end anchors and per-slot value restrictions; all statistics are
//!   linear combinations of pattern counters or a handful of builtins.
//! - [`StatSpec`]: a named or ad-hoc statistic, evaluated exactly.
//! - [`DyckPath`] / [`ShortenedPolyomino`]: lattice objects carrying area,
//!   tunnel and mass statistics.
//! - [`QPoly`] / [`MultiPoly`]: exact integer-coefficient polynomials used
//!   for distribution bookkeeping; no floating point anywhere.
//!
//! On top of these sit the bijection suites ([`bij`], [`dyck`], [`polyomino`])
//! and the verification layer ([`verify`]) which checks equidistributions of
//! the form `Σ_{σ∈S_n(Π1)} q^{stat1(σ)} = Σ_{σ∈S_n(Π2)} q^{stat2(σ)}`
//! exhaustively at small `n`.
//!
//! # Error handling
//!
//! Fallible constructors and class-restricted maps return [`Error`] for user
//! errors (malformed literals, inputs outside the documented avoidance
//! class, inconsistent reconstruction data). Violations of proved theorems
//! (e.g. a bijection output failing a validity check that is guaranteed by
//! construction) panic, since they indicate an implementation bug rather
//! than bad input.

pub mod bij;
pub mod cache;
pub mod dyck;
pub mod pattern;
pub mod perm;
pub mod polyomino;
pub mod qpoly;
pub mod qseries;
pub mod stats;
pub mod verify;

pub use dyck::DyckPath;
pub use pattern::VincularPattern;
pub use perm::Permutation;
pub use polyomino::ShortenedPolyomino;
pub use qpoly::QPoly;
pub use qseries::MultiPoly;
pub use stats::StatSpec;

/// Crate-wide error type for user-facing failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A permutation literal or constructor argument is not a bijection of `[n]`.
    #[error("not a permutation of [n]: {0}")]
    NotAPermutation(String),
    /// A pattern literal failed to parse.
    #[error("malformed pattern literal {literal:?}: {reason}")]
    PatternParse { literal: String, reason: String },
    /// A statistic literal or name is unknown.
    #[error("unknown statistic {0:?}")]
    UnknownStat(String),
    /// A statistic literal failed to parse.
    #[error("malformed statistic literal {literal:?}: {reason}")]
    StatParse { literal: String, reason: String },
    /// A Dyck-word or polyomino literal failed to parse or validate.
    #[error("invalid lattice path: {0}")]
    InvalidPath(String),
    /// Input to a class-restricted map lies outside the required class.
    #[error("input contains the pattern {pattern} (not in the avoidance class)")]
    NotInClass { pattern: String },
    /// A block-decomposition schema does not apply to the input.
    #[error("decomposition schema mismatch at position {position}: {reason}")]
    SchemaMismatch { position: usize, reason: String },
    /// Inflation called with a block count different from the skeleton length.
    #[error("inflation arity mismatch: skeleton length {skeleton}, {blocks} blocks")]
    ArityMismatch { skeleton: usize, blocks: usize },
    /// Reconstruction data does not describe any permutation of the class.
    #[error("inconsistent reconstruction data: {0}")]
    InconsistentData(String),
    /// A statistic evaluated to a negative value where a distribution
    /// exponent was required.
    #[error("statistic value {value} is negative; cannot form a q-exponent")]
    NegativeStatistic { value: i64 },
    /// Cache I/O failure (wraps the OS error text).
    #[error("cache error: {0}")]
    Cache(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
