use thiserror::Error;

/// Errors raised across field arithmetic, linear algebra, code construction
/// and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("value {value} is not an element of GF({q})")]
    NotAnElement { value: u64, q: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular: {size}x{size} with rank {rank} (deficit {})", size - rank)]
    Singular { size: usize, rank: usize },

    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("evaluation points must be distinct: alpha_{first} = alpha_{second} = {value}")]
    DuplicateAlpha {
        first: usize,
        second: usize,
        value: u64,
    },

    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(String),

    #[error("invalid erasure pattern: {0}")]
    InvalidErasure(String),

    #[error(
        "state vector would need {required} amplitudes, above the limit of {limit}; \
         use the subspace-intersection oracle for these parameters"
    )]
    MemoryGuard { required: u128, limit: u128 },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
