use thiserror::Error;

#[derive(Debug, Error)]
pub enum B3Error {
    #[error("degree violation: expected a pure degree-{expected} form, found components in degrees {found:?}")]
    DegreeViolation { expected: usize, found: Vec<usize> },

    #[error("point {point:?} outside domain (axis {axis})")]
    OutsideDomain { point: [f64; 3], axis: usize },

    #[error("zero spinor passed to {op}")]
    ZeroSpinor { op: &'static str },

    #[error("integrand degree {degree} does not match integration dimension {dim}")]
    DegreeDimensionMismatch { degree: usize, dim: usize },

    #[error("unknown catalog case `{0}`")]
    UnknownCase(String),

    #[error("invalid surgery data: {0}")]
    InvalidSurgery(String),

    #[error("surgery neighbourhoods overlap: site {0} and site {1}")]
    OverlappingSites(usize, usize),

    #[error("cutoff plateau too narrow for grid: {0}")]
    PlateauTooNarrow(String),

    #[error("gluing verification failed: {0}")]
    GlueFailed(String),

    #[error("check precondition failed: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, B3Error>;
