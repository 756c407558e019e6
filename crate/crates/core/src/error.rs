use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected 2, 4 or 8)")]
    UnsupportedDimension(usize),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("qubit index {index} out of range for {qubits} qubits")]
    IndexOutOfRange { index: usize, qubits: usize },
    #[error("expected a {expected}-qubit state, got {actual} qubits")]
    WrongDimension { expected: usize, actual: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("state is not in the rank-2 X family (max entry deviation {max_deviation:e})")]
    NotInFamily { max_deviation: f64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("value {value} out of range: {what}")]
    OutOfRange { what: &'static str, value: f64 },
    #[error(
        "coherence f = {f} differs from sqrt(bc) = {expected}; only the rank-2 slice is supported"
    )]
    UnsupportedCoherence { f: f64, expected: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("general optimizer did not settle: last restart moved the best value by {change:e} (tol {tol:e})")]
    ConvergenceFailure { change: f64, tol: f64 },
}
