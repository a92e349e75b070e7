use thiserror::Error;

use crate::eisenstein::Eisenstein;
use crate::matrix::Label;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("cannot parse Eisenstein integer {0:?}")]
    ParseEisenstein(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is zero")]
    ZeroMatrix,

    #[error("matrix does not have full row rank (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("unknown column label {0}")]
    UnknownLabel(Label),

    #[error("duplicate column label {0}")]
    DuplicateLabel(Label),

    #[error("{0} is not a sixth root of unity")]
    NotAUnit(Eisenstein),

    #[error("pivot entry at ({row}, {col}) is zero")]
    ZeroPivot { row: usize, col: usize },

    #[error("index out of range: {0}")]
    Index(String),

    #[error(
        "{count} minors exceed the validation guard of {guard}"
    )]
    MinorGuard { count: u128, guard: u128 },

    #[error("{what} needs dimension <= {guard}, got {actual}")]
    SizeGuard {
        what: &'static str,
        guard: usize,
        actual: usize,
    },

    #[error("not an H-matrix: {0}")]
    NotHMatrix(String),

    #[error("{0:?} is not a basis")]
    NotABasis(Vec<Label>),

    #[error("element {0} is not in the basis")]
    NotInBasis(Label),

    #[error("basis count {count} differs from det(MM^H) = {det}")]
    BasisCountMismatch { count: usize, det: String },

    #[error("basepoint {0} is a loop")]
    LoopBasepoint(Label),

    #[error("basepoint {0} is a coloop")]
    ColoopBasepoint(Label),

    #[error("matrix is not integral: {0}")]
    NotIntegral(String),

    #[error("invalid family: {0}")]
    Family(String),

    #[error("invalid equivalence op: {0}")]
    Op(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
