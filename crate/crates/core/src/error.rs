use thiserror::Error;

use crate::cantor::Word;

/// Everything that can go wrong in the library.
///
/// Budget and bound failures are reported as errors rather than panics so that
/// callers (the CLI in particular) can map them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("depth {requested} is below the representation depth {depth}")]
    DepthTooSmall { requested: usize, depth: usize },

    #[error("search bound {bound} exceeded: {context}")]
    BoundExceeded { bound: usize, context: String },

    #[error("budget exceeded: {context}")]
    BudgetExceeded { context: String },

    #[error("chromatic search budget exhausted: {lower} <= chi <= {upper}")]
    ChromaticBudget { lower: usize, upper: usize },

    #[error("word map is not injective")]
    NotInjective,

    #[error("not found: {0}")]
    NotFound(String),

    #[error("fusion certificate violated at index {index}")]
    CertificateViolation { index: usize },

    #[error("refuter failed at stage {stage} below node {node}")]
    RefuterFailure { stage: usize, node: Word },

    #[error("no agreeing restriction found: {0}")]
    DensityFailure(String),

    #[error("fatness witness missing for node {node} under shift {shift}")]
    FatnessMissing { node: Word, shift: Word },

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("tree is not perfect above node {node}")]
    NotPerfect { node: Word },
}

pub type Result<T> = std::result::Result<T, Error>;
