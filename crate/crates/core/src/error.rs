use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (this operation needs d in 1..=3)")]
    UnsupportedDimension(usize),

    #[error("dilation parameter must be nonnegative, got {0}")]
    NegativeDilation(f64),

    #[error("row {row} has offset {offset}; the origin must lie strictly inside")]
    OriginNotInterior { row: usize, offset: f64 },

    #[error("the origin is not an interior point of the convex hull")]
    OriginOutsideHull,

    #[error("polytope is unbounded or lower-dimensional")]
    Degenerate,

    #[error("row {0} is redundant")]
    RedundantRow(usize),

    #[error("H- and V-representations disagree: {0}")]
    Inconsistent(String),

    #[error("cone generators do not span the ambient space")]
    DegenerateCone,

    #[error("facet normal is zero")]
    ZeroNormal,

    #[error("no proper rotation maps this normal to e_1 in dimension 1")]
    NoRotation,

    #[error("piece {0} is not axis-aligned (facet normal must be +e_1 or -e_1)")]
    NotAxisAligned(usize),

    #[error("grid resolution {resolution} aliases bandwidth {bandwidth} (need M >= 2B + 1)")]
    Aliasing { resolution: usize, bandwidth: u64 },

    #[error("variation exponent must be >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("sequence is empty")]
    EmptySequence,

    #[error("brute force is capped at {cap} values, got {len}")]
    LengthCap { cap: usize, len: usize },

    #[error("threshold must be nonnegative, got {0}")]
    NegativeThreshold(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("rejection budget of {0} attempts exhausted")]
    RejectionBudget(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
