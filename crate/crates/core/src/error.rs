use thiserror::Error;

use crate::algebra::Violation;
use crate::products::BbReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{} axiom violation(s), first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    AxiomViolation(Vec<Violation>),

    #[error("elements of length {0} and {1} do not belong to the same algebra")]
    AlgebraMismatch(usize, usize),

    #[error("closed-subset search frontier exceeded the cap of {cap} candidates")]
    SizeLimitExceeded { cap: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{0:?} is not a closed subset")]
    NotClosed(Vec<usize>),

    #[error("closed subset {0:?} is not normal")]
    NotNormal(Vec<usize>),

    #[error("C+ * b_{b} is not a scalar multiple of (Cb)+")]
    AlphaIdentityFailed { b: usize },

    #[error(
        "quotient constant gamma({i},{j},{k}) depends on the coset member: t={t_rep} gives {at_rep}, t={t} gives {at_t}"
    )]
    RepresentativeDependence {
        i: usize,
        j: usize,
        k: usize,
        t_rep: usize,
        t: usize,
        at_rep: String,
        at_t: String,
    },

    #[error("degree-one cosets {by_degree:?} differ from b* C b inside C set {by_support:?}")]
    DegreeOneMismatch {
        by_degree: Vec<usize>,
        by_support: Vec<usize>,
    },

    #[error("could not split the algebra after {attempts} attempt(s): {reason}")]
    SplittingFailed { attempts: usize, reason: String },

    #[error("tolerance breach in {what}: residual {residual:e}")]
    ToleranceBreach { what: String, residual: f64 },

    #[error(
        "coefficient {index} disagrees: dual form gives {via_form}, linear solve gives {via_solve}"
    )]
    CrossCheckMismatch {
        index: usize,
        via_form: String,
        via_solve: String,
    },

    #[error("kernel {0:?} is not closed; retry with a tighter tolerance")]
    KernelNotClosed(Vec<usize>),

    #[error("embedding mismatch: {0}")]
    EmbeddingMismatch(String),

    #[error("Burnside-Brauer hypotheses failed: {}", .0.failed_hypotheses().join(", "))]
    HypothesisFailed(Box<BbReport>),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("not an association scheme: p^{k}_({i},{j}) takes values {first} and {second}")]
    NotAScheme {
        k: usize,
        i: usize,
        j: usize,
        first: usize,
        second: usize,
    },

    #[error("not an association scheme: {0}")]
    NotASchemeRelation(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}
