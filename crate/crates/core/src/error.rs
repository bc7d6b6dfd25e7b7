use thiserror::Error;

/// Errors raised by form, kernel and linear algebra operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty matrix")]
    Empty,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("not positive definite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("columns are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("invalid tolerance {name} = {value}")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("negative scale factor {0}")]
    NegativeScale(f64),

    #[error("kernel shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("t not dominated by w")]
    NotDominated,

    #[error("t not almost dominated by w")]
    NotAlmostDominated,

    #[error("form not minimal")]
    NotMinimal,

    #[error("u not below t")]
    NotBelow,

    #[error("no dilation: ker w_L ⊄ ker w_K")]
    NoDilation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two routes that must agree by a structural identity disagreed numerically.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for failures of a mathematical precondition (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotDominated
                | Error::NotAlmostDominated
                | Error::NotMinimal
                | Error::NotBelow
                | Error::NoDilation
                | Error::Inconsistent(_)
                | Error::NoConvergence(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
