use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown or unsupported Dynkin type `{0}` (expected A1.., B2.., C2.., D4.., E6-E8, F4 or G2)")]
    UnknownType(String),
    #[error("Cartan matrix is empty")]
    Empty,
    #[error("Cartan matrix row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("Cartan matrix diagonal entry at node {node} is {value}, expected 2")]
    BadDiagonal { node: usize, value: i64 },
    #[error("Cartan matrix entries ({i},{j}) and ({j},{i}) must be nonpositive and vanish together")]
    BadOffDiagonal { i: usize, j: usize },
    #[error("not of finite type: principal minor on nodes {minor:?} has determinant {determinant}")]
    NotFiniteType { minor: Vec<usize>, determinant: i128 },
    #[error("node {node} is not in a diagram of rank {rank}")]
    UnknownNode { node: usize, rank: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("group enumeration exceeded the limit of {limit} elements")]
    TooLarge { limit: usize },
    #[error("conjugating s{node} by the longest element of {sub} does not give a simple reflection")]
    InvolutionNotGenerator { node: usize, sub: String },
    #[error("subdiagram {0} is not connected")]
    NotConnected(String),
    #[error("word contains generator {node}, but the diagram has rank {rank}")]
    BadGenerator { node: usize, rank: usize },
}

/// Failures of the Kazhdan-Lusztig machinery. These indicate a bug, never bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlError {
    #[error("C_{w} failed validation: {reason}")]
    Validation { w: String, reason: String },
}

/// Failures while identifying the involution `sigma` from `C_w T_{w_0}`.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error("sigma-ambiguity at w = {w}: {count} terms in the two-sided cell of w; expansion: {expansion}")]
    Ambiguity { w: String, count: usize, expansion: String },
    #[error("sigma-non-monomial at w = {w}: coefficient of C_{image} is {coefficient}; expansion: {expansion}")]
    NonMonomial { w: String, image: String, coefficient: String, expansion: String },
    #[error("sigma-residual at w = {w}: C_{term} is not strictly LR-below w; expansion: {expansion}")]
    Residual { w: String, term: String, expansion: String },
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
