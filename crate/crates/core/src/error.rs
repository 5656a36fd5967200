use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("operation requires {expected} n, got n = {n}")]
    Parity { expected: &'static str, n: usize },

    #[error("no dedal polygon exists: alternating vertex sum is {defect}")]
    NoDedal { defect: Complex64 },

    #[error("polygon degenerates to a point")]
    PointPolygon,

    #[error("polygon is not affinely regular")]
    NotAffinelyRegular,

    #[error("polygon is not in the list of polygons similar to their dedal polygon")]
    NotInList,

    #[error("spectral support is the segment direction X_{{n/2}} only")]
    NoAttractor,

    #[error("predicted similarity witness fails verification (residual {residual:e})")]
    WitnessVerification { residual: f64 },

    #[error("point lies inside or on the convex hull of the table")]
    InsideHull,

    #[error("point lies on the continuation of table side {side}")]
    Singular { side: usize },

    #[error("table hull is degenerate (fewer than 3 extreme points)")]
    DegenerateTable,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
