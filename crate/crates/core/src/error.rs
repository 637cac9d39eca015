use thiserror::Error;

use crate::fc::FcSequenceRecord;
use crate::mixed::HilbertTable;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    /// Malformed polynomial text; `column` is 1-based.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("arity mismatch: expected {expected} exponents, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("polynomials live in different rings")]
    ContextMismatch,

    #[error("no generators of degree {degree} to combine")]
    EmptyStratum { degree: u32 },

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("computation limit exceeded: {0}")]
    ComputationLimit(String),

    #[error("ideal is not primary to the maximal ideal: {0}")]
    NotMPrimary(String),

    /// The family's product is nilpotent in the model: `Γ : I^∞` is the unit ideal.
    #[error("ideal product is nilpotent: {0}")]
    Nilpotent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not a member of its direction ideal: {0}")]
    NotMember(String),

    /// The Hilbert table never met the stabilization test below the base cap.
    #[error("Hilbert table did not stabilize (last base {})", .0.base[0])]
    Stabilization(Box<HilbertTable>),

    /// The one-variable Hilbert-Samuel function did not stabilize.
    #[error("Hilbert-Samuel function did not stabilize by base {base}; values {values:?}")]
    SamuelStabilization { base: u32, values: Vec<i64> },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// Candidate search exhausted its retries; carries what was built so far.
    #[error("weak-(FC) search failed at step {}: {}", .record.elements.len() + 1, .reason)]
    SearchFailure {
        record: Box<FcSequenceRecord>,
        reason: String,
    },
}

impl Error {
    /// Short stable code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Input(_) => "INPUT",
            Error::Syntax { .. } => "SYNTAX",
            Error::ArityMismatch { .. } => "ARITY_MISMATCH",
            Error::ContextMismatch => "CONTEXT_MISMATCH",
            Error::EmptyStratum { .. } => "EMPTY_STRATUM",
            Error::NotHomogeneous(_) => "NOT_HOMOGENEOUS",
            Error::ComputationLimit(_) => "COMPUTATION_LIMIT",
            Error::NotMPrimary(_) => "J_NOT_M_PRIMARY",
            Error::Nilpotent(_) => "I_NILPOTENT",
            Error::Precondition(_) => "PRECONDITION",
            Error::NotMember(_) => "NOT_MEMBER",
            Error::Stabilization(_) => "STABILIZATION",
            Error::SamuelStabilization { .. } => "STABILIZATION",
            Error::Inconsistency(_) => "INCONSISTENCY",
            Error::SearchFailure { .. } => "SEARCH_FAILURE",
        }
    }

    /// Whether the failure is "not enough evidence" rather than a wrong answer.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::Stabilization(_)
                | Error::SamuelStabilization { .. }
                | Error::SearchFailure { .. }
                | Error::ComputationLimit(_)
        )
    }
}
