use thiserror::Error;

/// Errors raised by the entanglement library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("overlap modulus exceeds 1 ({which} = {modulus})")]
    OverlapExceedsUnity { which: &'static str, modulus: f64 },

    #[error("both branch coefficients are zero")]
    ZeroCoefficients,

    #[error("degenerate state: squared norm {squared_norm:e} is not positive")]
    DegenerateState { squared_norm: f64 },

    #[error("kets are linearly dependent ({0})")]
    LinearlyDependent(&'static str),

    #[error("amplitude grid has zero norm")]
    ZeroState,

    #[error("nu is zero; phase parameters are undefined")]
    NuZero,

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("invalid variant {0}")]
    InvalidVariant(String),

    #[error("Fock cutoff overflow: label modulus {modulus} exceeds 30")]
    CutoffOverflow { modulus: f64 },

    #[error("coherent label modulus {0} exceeds 1e4")]
    LabelTooLarge(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
