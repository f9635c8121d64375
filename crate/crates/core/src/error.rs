use thiserror::Error;

/// Errors produced by any operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("matrix is not Hermitian: max asymmetry {0:.3e}")]
    NotHermitian(f64),
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("t must be nonzero")]
    ZeroT,
    #[error("element {index} is not positive-semidefinite: min eigenvalue {eigenvalue:.6e}")]
    NotPsd { index: usize, eigenvalue: f64 },
    #[error("purity {0} outside the admissible range (1/d^3, 1/d^2]")]
    PurityOutOfRange(f64),
    #[error("purity is within 1e-13 of 1/d^3: dual frame formula is singular")]
    DegeneratePovm,
    #[error("basis validation failed: {0}")]
    InvalidBasis(String),
    #[error("operators violate the equiangular Gram structure: residual {0:.3e}")]
    BadGramStructure(f64),
    #[error("singular inner block in determinant recursion at value {0}")]
    SingularBlock(f64),
    #[error("no sign change found while isolating roots")]
    NoSignChange,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
