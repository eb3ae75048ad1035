use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("loop arrow {0}")]
    LoopArrow(String),
    #[error("directed cycle through vertices {0:?}")]
    Cycle(Vec<u32>),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("duplicate id {0}")]
    Duplicate(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u32>),
    #[error("word is not c-sortable (block {block})")]
    NotSortable { block: usize },
    #[error("truncation too small: need N >= {required}, have {got}")]
    TruncationTooSmall { required: i32, got: i32 },
    #[error("owner mismatch: {0}")]
    OwnerMismatch(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("vertex {0} is not a source")]
    NotSource(u32),
    #[error("module is not in Sub: {0}")]
    NotInSub(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
