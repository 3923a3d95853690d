//! Exact linear algebra over the rationals.
//!
//! Everything in this module computes with arbitrary-precision rationals, so
//! ranks, nullspaces and polynomial manipulations carry no rounding error.
//! The floating-point counterparts live in [`crate::numalg`].

mod faddeev;
mod matrix;
mod poly;
mod polymatrix;
mod rational;

pub use faddeev::{faddeev_leverrier, CharData};
pub use matrix::{
    kron, left_nullspace, rat_rank, row_times, rref, si_minus, solve, RMatrix,
};
pub use poly::{
    poly_gcd, rational_roots, squarefree_decomposition, strip_factors, Poly, RationalRoots,
};
pub use polymatrix::PolyMatrix;
pub use rational::{parse_rat, rat, rat_str, rint, Rat};

/// Errors raised by the exact-arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    /// An operation that needs a square matrix got a rectangular one.
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    /// A string did not parse as an exact rational.
    #[error("cannot parse {text:?} as a rational number: {reason}")]
    BadRational { text: String, reason: String },
    /// Root extraction was asked for the zero polynomial.
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    /// Polynomial division by zero.
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}
