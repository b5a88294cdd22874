//! Exact symbolic computation in root-of-unity quantum cluster algebras.
//!
//! The crate is organized around a handful of exact-arithmetic layers:
//!
//! - [`cyclotomic`]: the coefficient rings `Z[zeta]` and `Q(zeta)` for a
//!   primitive `l`-th root of unity `zeta`, realized as residues modulo the
//!   `l`-th cyclotomic polynomial.
//! - [`lattice`]: integer linear algebra (Hermite/Smith normal forms, kernels
//!   of bicharacters mod `l`, lattice indices, PI degrees, compatible pairs).
//! - [`torus`]: sparse exact arithmetic in quantum tori twisted by a
//!   skew-symmetric bicharacter, including exact one-sided division and
//!   Newton-polytope queries.
//! - [`seed`]: quantum seeds and their mutation, with toric frames kept as
//!   exact Laurent expansions in the initial torus.
//! - [`graph`]: breadth-first exchange-graph exploration with labelled and
//!   unlabelled deduplication, plus the commutative shadow.
//! - [`membership`]: seed-to-seed conversion of elements and membership
//!   oracles for intersections of mixed quantum tori and their centers.
//! - [`trace`]: regular/standard/reduced traces, Newton-identity coefficient
//!   extraction and Cayley-Hamilton verification.
//! - [`monoid`]: monomial subalgebras of quantum tori, monoid membership,
//!   saturation, and the maximal-order classification.
//! - [`expr`] and [`cli`]: the element-expression grammar and the
//!   command-line pipeline.

pub mod cyclotomic;
pub mod expr;
pub mod geom;
pub mod graph;
pub mod lattice;
pub mod membership;
pub mod monoid;
pub mod seed;
pub mod torus;
pub mod trace;

pub mod cli;

use std::fmt;

/// Errors produced by the library. Structural invariant violations (such as
/// mismatched cyclotomic contexts in a binary operation) panic instead, since
/// they indicate misuse rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `l = 0` or another out-of-range structural parameter.
    BadParameter(String),
    /// A mutation was requested in a frozen (non-exchangeable) direction.
    FrozenIndex(usize),
    /// Rank of an exponent vector or matrix does not match the ambient rank.
    RankMismatch { expected: usize, got: usize },
    /// Exact division failed where the caller required success.
    DivisionFailed(String),
    /// A seed invariant (compatibility, frame quasi-commutation) failed.
    InvariantViolated(String),
    /// The coprimality condition on `l` and the skew-symmetrizer is violated.
    CoprimeViolated(String),
    /// An element could not be expanded through a frame (negative exponent at
    /// a non-monomial frame value).
    NotExpandable(String),
    /// Syntax error in an element or scalar expression.
    Parse { pos: usize, msg: String },
    /// A monoid input outside the supported classes.
    UnsupportedMonoid(String),
    /// A selector (mutation word, vertex id) did not resolve.
    BadSelector(String),
    /// Malformed input data (seed document, matrix shape, ...).
    BadInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadParameter(m) => write!(f, "bad parameter: {m}"),
            Error::FrozenIndex(k) => write!(f, "index {} is not exchangeable", k + 1),
            Error::RankMismatch { expected, got } => {
                write!(f, "rank mismatch: expected {expected}, got {got}")
            }
            Error::DivisionFailed(m) => write!(f, "exact division failed: {m}"),
            Error::InvariantViolated(m) => write!(f, "seed invariant violated: {m}"),
            Error::CoprimeViolated(m) => write!(f, "coprimality condition violated: {m}"),
            Error::NotExpandable(m) => write!(f, "element not expandable through frame: {m}"),
            Error::Parse { pos, msg } => write!(f, "parse error at position {pos}: {msg}"),
            Error::UnsupportedMonoid(m) => write!(f, "unsupported monoid input: {m}"),
            Error::BadSelector(m) => write!(f, "selector did not resolve: {m}"),
            Error::BadInput(m) => write!(f, "bad input: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
