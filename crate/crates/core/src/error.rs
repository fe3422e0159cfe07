use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-real operand")]
    NonReal,
    #[error("no pair of roots")]
    NoPairOfRoots,
    #[error("repeated characteristic roots")]
    NotSimple,
    #[error("degenerate sequence")]
    Degenerate,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("order exceeds supported bound: {0}")]
    OrderTooLarge(usize),
    #[error("degree cap exceeded: {0}")]
    DegreeCap(usize),
    #[error("precision cap reached: {0}")]
    PrecisionCap(String),
    #[error("zero gap")]
    ZeroGap,
    #[error("torsion element")]
    Torsion,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
