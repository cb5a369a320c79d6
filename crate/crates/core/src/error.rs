//! Error type shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("asymmetric input at ({row}, {col}): |{delta}| exceeds 1e-12 and symmetrize is off")]
    AsymmetricInput { row: usize, col: usize, delta: f64 },

    #[error("epsilon must be > 0, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("site sets do not match: {0}")]
    SiteSetMismatch(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("insufficient pairs: {0}")]
    InsufficientPairs(String),

    #[error("zero values inside the fit window: {0} pairs at or below zero-tol")]
    ZeroValuesInWindow(usize),

    #[error("empty grid: {0}")]
    EmptyGrid(String),

    #[error("no pairs with distance >= r0 = {0}")]
    NoPairsBeyondR0(u32),

    #[error("epsilon {eps} too small: must exceed {bound} ({context})")]
    EpsilonTooSmall { eps: f64, bound: f64, context: String },

    #[error("operator support {site} out of range for {n} sites")]
    SupportOutOfRange { site: usize, n: usize },

    #[error("overlapping supports: site {0} appears on both sides")]
    OverlappingSupports(usize),

    #[error("subset of {size} sites exceeds cap {cap}")]
    SubsetTooLarge { size: usize, cap: usize },

    #[error("{requested} sites exceed the configured cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("dimension mismatch: operator is {got}x{got}, region of {sites} sites needs {want}x{want}")]
    DimensionMismatch { got: usize, want: usize, sites: usize },

    #[error("function must be positive on the sample range (first failure at t = {0})")]
    NonPositiveFunction(f64),

    #[error("invalid spec: {0}")]
    SpecError(String),

    #[error("parse error at line {line}, column {col}: {message}")]
    ParseError { line: usize, col: usize, message: String },

    #[error("invalid sites: {0}")]
    InvalidSites(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
