use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension {0} is not a power of two")]
    DimensionNotPowerOfTwo(usize),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{n} qubits exceeds the configured cap of {cap}")]
    QubitCapExceeded { n: usize, cap: usize },
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    QubitMismatch { expected: usize, found: usize },
    #[error("invalid Pauli word {0:?}")]
    InvalidPauliWord(String),
    #[error("locality {k} out of range for {n} qubits")]
    LocalityOutOfRange { k: usize, n: usize },
    #[error("term {word} has weight {weight} > declared locality {k}")]
    LocalityViolated { word: String, weight: usize, k: usize },
    #[error("coefficient of {0} has a non-zero imaginary part")]
    NotHermitian(String),
    #[error("spectral norm {0} exceeds 1")]
    NotNormalized(f64),
    #[error("Hermitian eigendecomposition failed")]
    EigenFailure,
    #[error("evolution time {0} outside (0, 1/2]")]
    TimeOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible plan: {0}")]
    InfeasiblePlan(String),
    #[error("no instance with the requested label after {attempts} attempts")]
    RejectionBudgetExhausted { attempts: usize },
    #[error("exact distribution requested outside verification mode")]
    VerificationDisabled,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasiblePlan(_) | Error::RejectionBudgetExhausted { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
