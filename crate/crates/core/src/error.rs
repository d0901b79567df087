use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("structure constants not antisymmetric at ({i}, {j}, {k})")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("cobracket is not a coboundary")]
    NoSolution,

    #[error("[r,r] is not proportional to the reference trivector (invariant: {invariant})")]
    NotProportional { invariant: bool },

    #[error("reference trivector is zero")]
    ZeroTrivector,

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("bivector has components outside h∧V")]
    NotBType,

    #[error("eigenstructure violated: {0}")]
    EigenstructureViolated(String),

    #[error("span is not closed under the bracket: {witness}")]
    NotClosed { witness: String },

    #[error("pairing between the two halves is degenerate")]
    DegeneratePairing,

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("matrix is not in SO0(1,n): {0}")]
    NotInGroup(String),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("element lies outside the product set: k[n+1][n+1] = {k_value}")]
    Obstructed { k_value: f64 },

    #[error("element lies on the boundary: k[n+1][n+1] = {k_value}")]
    OnBoundary { k_value: f64 },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
