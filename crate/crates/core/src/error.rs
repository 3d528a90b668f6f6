use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    /// A graph would exceed the 64-vertex representation cap.
    #[error("graph order {requested} exceeds the {cap}-vertex cap")]
    Size { requested: usize, cap: usize },

    /// A parameter is outside an operation's stated domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An operation refuses an input that would exceed its tractability budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Exhaustive enumeration is limited to small vertex counts.
    #[error("enumeration order {requested} exceeds the cap of {cap} vertices")]
    EnumerationCap { requested: usize, cap: usize },

    /// Malformed graph6 input; `offset` is the byte position of the defect.
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    /// A builder was handed an input violating its contract (e.g. a
    /// supposedly H-free graph that contains H).
    #[error("bad construction input: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
