use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which validity condition of the analytic storage-error bound failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidityFlag {
    /// The harmonic-number estimates need at least nine qubits.
    TooFewQubits,
    /// `x1 = 2San/J` must lie below one for the high-energy series to converge.
    HighEnergyRatio,
    /// `x2 = anθ` must lie below one for the codespace series to converge.
    CodespaceRatio,
}

impl std::fmt::Display for ValidityFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ValidityFlag::TooFewQubits => "n >= 9",
            ValidityFlag::HighEnergyRatio => "x1 = 2San/J < 1",
            ValidityFlag::CodespaceRatio => "x2 = an*theta < 1",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("level index {index} out of range 0..={max}")]
    LevelIndex { index: usize, max: usize },
    #[error("level indices must satisfy j < k (got j={j}, k={k})")]
    Ordering { j: usize, k: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bound not valid: {0} fails")]
    BoundInvalid(ValidityFlag),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: String, got: String },
    #[error("eigenvalue {0} is not near any known level")]
    SpectralMismatch(f64),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("noise model error: {0}")]
    Model(String),
    #[error("not a valid density matrix: {0}")]
    StateValidity(String),
    #[error("not a valid channel: {0}")]
    Channel(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("output error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
