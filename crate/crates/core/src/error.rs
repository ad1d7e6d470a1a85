use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {n} outside supported range 1..={max}")]
    DimensionOutOfRange { n: u32, max: u32 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: u32, found: u32 },

    #[error("vertex {vertex:#b} does not fit in dimension {n}")]
    VertexOutOfRange { vertex: u64, n: u32 },

    #[error("vertex {vertex:#b} is not a member of the subgraph")]
    NotInSubgraph { vertex: u32 },

    #[error("subgraph is empty")]
    EmptySubgraph,

    #[error("subgraph has {size} vertices, need more than {half} for a guaranteed intersection")]
    SubgraphTooSmall { size: usize, half: usize },

    #[error("pairing lambda(v) = {pairing} is not positive; the eigenvalues would be imaginary")]
    NonPositivePairing { pairing: String },

    #[error("square root of non-positive value {0}")]
    NonPositiveRadicand(String),

    #[error("square-free part of {0} is too large to factor")]
    RadicandTooLarge(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedRadicands(u64, u64),

    #[error("elimination found no kernel vector at tolerance {tau:e}; retry in exact mode")]
    RankDetectionFailed { tau: f64 },

    #[error("eigenvector residual {residual:e} exceeds tolerance {tau:e}")]
    ResidualTooLarge { residual: f64, tau: f64 },

    #[error("vector is zero")]
    ZeroVector,

    #[error("vector has nonzero coordinate outside the subgraph at {vertex:#b}")]
    OutsideSupport { vertex: u32 },

    #[error("matrix entry at ({row:#b}, {col:#b}) is not +1 or -1")]
    NotASigning { row: u32, col: u32 },

    #[error("enumeration of {required} subsets exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid enumeration plan: {0}")]
    InvalidPlan(String),

    #[error("weights must be positive: {0}")]
    NonPositiveWeight(String),

    #[error("parse error: {0}")]
    Parse(String),
}
