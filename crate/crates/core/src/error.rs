use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("letter {value} is not valid for rank {rank}")]
    InvalidLetter { value: i32, rank: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("rank must be at least {min}, got {rank}")]
    RankTooSmall { rank: usize, min: usize },

    #[error("word must be nonempty")]
    EmptyWord,

    #[error("the trivial element has no counting current")]
    TrivialWord,

    #[error("invalid marked graph: {0}")]
    InvalidGraph(String),

    #[error("length must be positive")]
    NonPositiveLength,

    #[error("graph must have volume 1")]
    NotNormalized,

    #[error("images do not form a basis")]
    NotABasis,

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("requested tail {requested:e} not reachable; best certified tail at the enumeration cap is {achievable:e}")]
    TailNotAchievable { requested: f64, achievable: f64 },

    #[error("drift machine window exceeded cap (last K = {window})")]
    WindowExceeded { window: usize },

    #[error("terminal classes have different drifts")]
    UnequalTerminalDrifts,

    #[error("stationary distribution could not be determined for a class of {states} states")]
    StationaryUnresolved { states: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
