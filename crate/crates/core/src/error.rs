use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QlabError {
    #[error("empty text")]
    EmptyText,
    #[error("empty pattern")]
    EmptyPattern,
    #[error("pattern of length {pattern} is longer than the text ({text})")]
    PatternTooLong { pattern: usize, text: usize },
    #[error("{what} {value} is outside 1..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("joinable segment trees have different bases ({left} vs {right})")]
    BaseMismatch { left: usize, right: usize },
    #[error("the root of a suffix tree has no occurrence list")]
    RootNode,
    #[error("{oracle} oracle refuses input of length {n} (budget {budget})")]
    BudgetExceeded {
        oracle: &'static str,
        n: usize,
        budget: usize,
    },
    #[error("expansion of {width} substrings exceeds the limit of {limit}")]
    ExpansionBudget { width: usize, limit: usize },
    #[error("package sets were canonicalized on different suffix trees")]
    CanonicalMismatch,
    #[error("malformed equality relation ({i}, {j}, {len}) for length {n}")]
    MalformedRelation {
        i: usize,
        j: usize,
        len: usize,
        n: usize,
    },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = QlabError> = std::result::Result<T, E>;
