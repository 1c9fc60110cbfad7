//! Super dialgebras and Leibniz superalgebras over the rationals: structure
//! constants, identity checkers, matrix algebras with dialgebra
//! coefficients, root gradings and coordinatization models.

mod algebra;
pub mod catalog;
pub mod checks;
pub mod construct;
pub mod ideal;
pub mod matrix;
pub mod models;
mod product;
mod report;
mod space;
pub mod weights;

pub use algebra::{AlgebraRef, LeibnizSuperalgebra, SuperDialgebra};
pub use product::BilinearProduct;
pub use report::{grid_check, CheckOptions, Violation, ViolationReport, DEFAULT_MAX_VIOLATIONS};
pub use sdias_linalg as linalg;
pub use space::{koszul, Parity, SuperSpace, VectorParity};

use sdias_linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("parity must be 0 or 1, got {0}")]
    BadParity(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("bar-unit must be even")]
    OddUnit,
    #[error("dialgebra has no bar-unit")]
    MissingBarUnit,
    #[error("{0} is not parity-homogeneous")]
    Inhomogeneous(String),
    #[error("{0} is not an associative superalgebra (left and right products differ)")]
    NotAssociativeAlgebra(String),
    #[error("differential does not preserve parity on {0}")]
    OddDifferential(String),
    #[error("differential does not square to zero (fails on {0})")]
    DifferentialNotSquareZero(String),
    #[error("map is not a derivation (fails on {0})")]
    NotADerivation(String),
    #[error("{0} is not a Lie superalgebra")]
    NotLie(String),
    #[error("carrier would be zero-dimensional")]
    EmptyCarrier,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("subspace is not closed under the bracket: {0} leaves it")]
    NotClosed(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("matrix size m + n = {0} is too small")]
    MatrixTooSmall(usize),
    #[error("sl({0},{0}) is excluded: blocks of equal size")]
    EqualBlocks(usize),
    #[error("coefficients are not scalars (vector of dimension {0})")]
    NonScalarCoefficients(usize),
    #[error("Cartan elements do not commute: {0}")]
    NonCommutingCartan(String),
    #[error("Cartan element {0} is not in the grading subalgebra")]
    CartanOutsideSubalgebra(usize),
    #[error("missing image for {0}")]
    MissingImage(String),
    #[error("{0} has no bar-unit")]
    NotUnital(String),
    #[error("{0} fails the associativity axioms")]
    NotAssociative(String),
    #[error("invalid coordinate data: {0}")]
    InvalidData(String),
    #[error("invariant form is {0}")]
    InvalidForm(String),
    #[error("module decomposition mismatch: {0}")]
    DecompositionMismatch(String),
}
