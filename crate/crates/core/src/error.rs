use alloc::string::String;

/// Errors produced anywhere in the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("norm {norm:e} exceeds the exponential bound {bound:e}")]
    NormTooLarge { norm: f64, bound: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("register layout: {0}")]
    Layout(String),

    #[error("{width} qubits exceed the limit of {limit}")]
    TooManyQubits { width: usize, limit: usize },

    #[error("gate on qubit {qubit} does not fit a {width}-qubit layout")]
    QubitOutOfRange { qubit: usize, width: usize },

    #[error("gate target {0} is also a control")]
    TargetIsControl(usize),

    #[error("layouts differ between circuit and state")]
    LayoutMismatch,

    #[error("post-selection has zero probability")]
    ZeroProbability,

    #[error("element modulus over eta is {ratio}, must not exceed 1")]
    InvalidSubnormalization { ratio: f64 },

    #[error("LCU branch weights sum to {sum}, expected {alpha}")]
    BranchWeights { sum: f64, alpha: f64 },

    #[error("Jacobi-Anger series cannot reach {eps:e} below order {cap}")]
    TruncationOrderCap { eps: f64, cap: usize },

    #[error("phase solver did not converge: residual {residual:e} after {iterations} iterations")]
    PhaseSolver { residual: f64, iterations: usize },

    #[error("{rounds} amplification rounds overshoot: probability {probability} < {p0}")]
    AmplificationOvershoot {
        rounds: u32,
        probability: f64,
        p0: f64,
    },

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
