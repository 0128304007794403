//! Exact combinatorics for intersecting families of `k`-multisets.
//!
//! A `k`-multiset over `[m] = {1, ..., m}` is a collection of `k` elements
//! with repetition allowed. Two multisets intersect when they share an
//! element; more generally they `t`-intersect when the pointwise minimum of
//! their multiplicity vectors sums to at least `t`. This crate provides:
//!
//! * exact, arbitrary-precision counting plus canonical ranking/unranking of
//!   `k`-subsets and `k`-multisets ([`combinatorics`]),
//! * the [`families`] module: the `Multiset`/`Family` types, every extremal
//!   construction (stars, support levels, half-support selections, the
//!   Frankl-type `t`-intersecting families) and the closed-form bounds they
//!   attain,
//! * Kneser-type disjointness graphs `K(n,k,t)` and their multiset analogue
//!   `M(m,k,t)`, with DIMACS / edge-list export ([`graphs`]),
//! * an explicit bijective homomorphism from `k`-subsets of `[m+k-1]` onto
//!   `k`-multisets of `[m]` ([`bijection`]),
//! * the support-exchange compression step that enlarges intersecting
//!   families while preserving the intersecting property ([`compression`]),
//! * an exact branch-and-bound maximum independent set solver, full maximum
//!   census enumeration, and solver-independent certificate verification
//!   ([`solver`]).

pub mod bijection;
mod bitset;
pub mod combinatorics;
pub mod compression;
pub mod families;
pub mod graphs;
pub mod solver;

pub use bitset::Bitset;

use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A rank was queried outside `[0, count)` for its object class.
    #[error("rank {rank} out of range: object class has {count} members")]
    RankOutOfRange { rank: u64, count: u64 },

    /// The object class is too large for 64-bit ranks.
    #[error("object count exceeds the 64-bit ranking range ({0})")]
    CountOverflow(String),

    /// An input object violates its canonical form (unsorted, duplicated,
    /// out-of-range elements, inconsistent counts vector, ...).
    #[error("not a canonical object: {0}")]
    NotCanonical(String),

    /// Two objects with different `(m, k)` or universe contexts were combined.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    /// A parameter is outside the domain of the requested operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An instance exceeds a configured size limit.
    #[error("instance too large: {vertices} vertices exceeds the limit of {limit}; {hint}")]
    TooLarge {
        vertices: String,
        limit: u64,
        hint: &'static str,
    },

    /// An operation that needs a member was handed an empty family.
    #[error("family is empty")]
    EmptyFamily,

    /// Malformed textual input (DIMACS, element lists, ...).
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
