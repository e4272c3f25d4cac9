use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |a_rc - conj(a_cr)| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U U^† - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not positive semidefinite: {0}")]
    NotPositive(String),

    #[error("not a valid density matrix: {0}")]
    NotDensity(String),

    #[error("bad subsystem: {0}")]
    BadSubsystem(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },

    #[error("measurement outcome has probability {probability:.3e}; conditional state undefined")]
    ZeroProbability { probability: f64 },

    #[error(
        "closed form for channel {channel} disagrees with dense evolution at tau={tau}, eps_tilde={eps_tilde}: \
         entry ({row}, {col}) deviates by {deviation:.3e}"
    )]
    OracleMismatch {
        channel: String,
        tau: f64,
        eps_tilde: f64,
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("invalid scan grid: {0}")]
    InvalidGrid(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("invalid value for `{key}`{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Validation {
        key: String,
        line: Option<usize>,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit status the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::UnknownKey { .. } | Error::Validation { .. } => 2,
            Error::OracleMismatch { .. } => 4,
            _ => 3,
        }
    }
}
