use thiserror::Error;

use crate::graph::VertexSet;
use crate::pattern::PatternWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph has {n} vertices but the limit is {limit}{hint}")]
    Capacity {
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error at line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("graph is not (P2 ∪ P3)-free: {0}")]
    NotFree(PatternWitness),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structure the argument relies on is missing; the carried cutset is
    /// a toughness violation that explains why.
    #[error("toughness refutation: removing {cutset} leaves {components} components")]
    ToughnessRefutation {
        cutset: VertexSet,
        components: usize,
        detail: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
