//! Exact linear algebra over the rationals: scalars, sparse vectors,
//! subspaces in reduced row-echelon form, linear maps and their
//! characteristic polynomials.

mod map;
mod poly;
mod scalar;
mod subspace;
mod vector;

pub use map::LinearMap;
pub use poly::{rational_roots, Polynomial};
pub use scalar::Scalar;
pub use subspace::{row_reduce, solve_combination, Subspace};
pub use vector::SparseVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}")]
    MalformedScalar(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("could not factor constant term {0} while searching for roots")]
    RootSearchExhausted(String),
}
