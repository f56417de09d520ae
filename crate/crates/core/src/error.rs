use thiserror::Error;

/// Errors raised by the algebraic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid letter {0}: letters are positive integers")]
    InvalidLetter(i64),

    #[error("grade cap exceeded: norm {norm} is above the cap {cap}")]
    GradeCap { norm: u64, cap: u64 },

    #[error("node cap exceeded: {nodes} nodes, at most {cap} allowed")]
    NodeCap { nodes: usize, cap: usize },

    #[error("the empty word is not in the domain of this formula")]
    EmptyWord,

    #[error("character is not unital: value on the empty word is {0}")]
    NotUnital(String),

    #[error("grid functions live on different grids")]
    GridMismatch,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
