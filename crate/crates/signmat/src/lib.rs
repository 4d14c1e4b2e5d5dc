#![forbid(unsafe_code)]

//! Exact-arithmetic toolkit for symmetric matrix signings.
//!
//! A *signing* is a symmetric ±1 matrix `s`; the signed matrix `M(s)` is the
//! entrywise product of a symmetric rational matrix `M` and `s`. The library
//! decides whether an invertible signing exists (via perfect 2-matchings of
//! the support graph), constructs invertible and singular signings for
//! bipartite supports, computes the solvability index by minimum edge
//! addition, counts invertible signings at desk scale, and builds the
//! Partition-based hardness gadgets together with exhaustive verifiers.
//!
//! Everything is exact: matrix entries are arbitrary-precision rationals and
//! no floating point is used anywhere.

pub mod cert;
pub mod enumerate;
pub mod exactla;
pub mod gadgetry;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod signlab;

pub use exactla::{Rational, SymMatrix};
pub use graph::Graph;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("leading block is singular")]
    SingularBlock,
    #[error("invalid block split p={p} for dimension n={n}")]
    BadSplit { p: usize, n: usize },
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("bipartition does not separate edge {{{u}, {v}}}")]
    BadBipartition { u: usize, v: usize },
    #[error("graph has self-loops, which are unsupported here")]
    LoopsUnsupported,
    #[error("graph has isolated vertex {0}, which is unsupported here")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} has odd degree {degree} in the component")]
    OddDegree { vertex: usize, degree: usize },
    #[error("vertex set is not connected")]
    NotConnected,
    #[error("signing does not cover the support of the matrix at ({u}, {v})")]
    SupportMismatch { u: usize, v: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
