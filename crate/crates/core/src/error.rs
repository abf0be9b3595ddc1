use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not positive semi-definite (eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("trace is {0}, expected 1")]
    Trace(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("vector norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },
    #[error("invalid subsystem selection: {0}")]
    InvalidSelection(String),
    #[error("oscillator {index} is resonant with the qubit (zero detuning)")]
    Resonance { index: usize },
    #[error("dressed level is degenerate: {0}")]
    Degenerate(String),
    #[error("no real coupling reproduces the requested shift: {0}")]
    NoCouplingSolution(String),
    #[error("transmon regime violated: {0}")]
    Regime(String),
    #[error("no participation in [0, 1] reproduces the shift: {0}")]
    NoParticipationSolution(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
