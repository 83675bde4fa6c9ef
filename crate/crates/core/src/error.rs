use thiserror::Error;

/// Errors raised by geometry, generators and solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GpssError {
    #[error("a line needs two distinct points")]
    IdenticalPoints,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("duplicate line {0}")]
    DuplicateLine(String),
    #[error("{0} is not a prime at least {1}")]
    InvalidPrime(u64, u64),
    #[error("prime search starting at {0} overflows u64")]
    PrimeOverflow(u64),
    #[error("infeasible density: a {side}x{side} grid cannot hold {n} points")]
    InfeasibleDensity { n: usize, side: u64 },
    #[error("input point {0} is not a lattice point")]
    NotLattice(String),
    #[error("input set is not {alpha}-dense (spread^2 = {spread_sq}, bound alpha^2 n = {bound})")]
    NotDense {
        alpha: String,
        spread_sq: String,
        bound: String,
    },
    #[error("arrangement has no vertices")]
    DegenerateArrangement,
    #[error("restricted vertex {0} is not a vertex of the arrangement")]
    NotAVertex(String),
    #[error("sampling probability {0} is not in (0, 1)")]
    BadProbability(f64),
    #[error("only {available} distinct lines exist with coefficients in [-{range}, {range}], {requested} requested")]
    ExhaustedLineSpace {
        requested: usize,
        available: usize,
        range: i64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Errors raised while reading point and line files.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("not a rational in lowest terms: {0:?}")]
    BadNumber(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("file holds no records and its kind cannot be inferred")]
    UnknownKind,
}

pub type Result<T, E = GpssError> = std::result::Result<T, E>;
