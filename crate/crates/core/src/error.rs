use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {p} and q = {q} are not coprime")]
    Coprimality { p: i64, q: i64 },
    #[error("p = {p} is outside [1, q-1] for q = {q}")]
    Range { p: i64, q: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("empty expression")]
    EmptyExpression,
    #[error("element is not invertible in the Laurent polynomial algebra: {0}")]
    NotInvertible(String),
    #[error("operands belong to different algebras: {0} vs {1}")]
    ParamsMismatch(String, String),

    #[error("invalid representation point: {0}")]
    InvalidPoint(String),
    #[error("invalid torus grid {n1}x{n2}: both sides must be at least 4")]
    InvalidGrid { n1: usize, n2: usize },
    #[error("element is not self-adjoint (max deviation {0:e})")]
    NotSelfAdjoint(f64),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("no coprime pair (p, q) with 2 <= q <= {0}")]
    EmptyDomain(u32),
    #[error("q_max = {0} exceeds the supported limit of 50")]
    QMaxTooLarge(u32),
    #[error("at p = {p}, q = {q}: {source}")]
    AtParams {
        p: u32,
        q: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("resolution n = {n} is below 4q = {min}")]
    ResolutionTooLow { n: usize, min: usize },
    #[error("resolution n = {n} is not divisible by q = {q}")]
    ResolutionNotDivisible { n: usize, q: u32 },
    #[error("section violates twisted equivariance (max violation {0:e})")]
    MembershipViolation(f64),
    #[error("frequency box |m|,|n| <= {m_max} aliases on an {n}-point lattice")]
    AliasingRisk { m_max: usize, n: usize },
    #[error("phase jump of {0:.4} rad between adjacent samples; increase the sample count")]
    PhaseJumpTooLarge(f64),
    #[error("{got} samples requested, at least {min} required")]
    InsufficientSamples { got: usize, min: usize },

    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Strips any [`Error::AtParams`] context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtParams { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn at(p: u32, q: u32, source: Error) -> Error {
        Error::AtParams {
            p,
            q,
            source: Box::new(source),
        }
    }
}
