use thiserror::Error;

/// Crate-wide error type. Domain errors are values, not panics: callers can
/// inspect what went wrong (bad input, failed precondition, exhausted budget).
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("assignment sends edge ({a}, {b}) to ({fa}, {fb}), which is not an edge of the target")]
    NotHomomorphism { a: usize, b: usize, fa: usize, fb: usize },

    #[error("classes do not partition the vertex set: {0}")]
    NotPartition(String),

    #[error("multiplication table is not a group: {0}")]
    NotGroup(String),

    #[error("not a group action by graph automorphisms: {0}")]
    NotAction(String),

    #[error("paths do not compose: first ends at {end}, second starts at {start}")]
    NotComposable { end: usize, start: usize },

    #[error("vertices {a} and {b} are not adjacent")]
    NotAdjacent { a: usize, b: usize },

    #[error("not a verified 2-covering: {0}")]
    NotTwoCovering(String),

    #[error("budget exceeded: {found} items enumerated, budget {budget}")]
    BudgetExceeded { found: usize, budget: usize },

    #[error("graphs do not match: {0}")]
    GraphMismatch(String),

    #[error("{0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for precondition failures.
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
