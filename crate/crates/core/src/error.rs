use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `m == m'` carries no phase information; `m < m'` is the same state relabelled.
    #[error("degenerate state: m = {m} must exceed m' = {m_prime}")]
    DegenerateState { m: usize, m_prime: usize },

    #[error("state is not normalized: sum |amplitude|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("duplicate ket |{a},{b}> in superposition")]
    DuplicateKet { a: usize, b: usize },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("expectation has imaginary residual {residual:e}; operand is not Hermitian")]
    NonHermitianExpectation { residual: f64 },

    #[error("support needs {needed} photons but the cutoff is {cutoff}")]
    CutoffExceeded { needed: usize, cutoff: usize },

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("numerical derivative is unstable: {0}")]
    Derivative(String),
}
