use thiserror::Error;

use crate::semigroup::Diagnostics;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Structural(String),

    #[error("tables do not define a unary semigroup ({} violation(s), first: {})", .0.violations.len(), .0.first_message())]
    NotASemigroup(Diagnostics),

    #[error("element id {id} out of range for a structure of size {size}")]
    InvalidElement { id: u32, size: usize },

    #[error("unary arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("no binding for variable `{0}`")]
    MissingVariable(String),

    #[error("sandwich matrix violates p_ij = p_ji^-1 at ({i}, {j})")]
    SandwichAsymmetric { i: usize, j: usize },

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("invalid field: {0}")]
    Field(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("partial unary operation: {0}")]
    PartialOperation(String),

    #[error("size {size} exceeds the cap {cap}")]
    SizeCap { size: u128, cap: u128 },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("format error on line {line}: {msg}")]
    Format { line: usize, msg: String },
}
