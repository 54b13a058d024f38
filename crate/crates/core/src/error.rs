use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("surface S_{{{genus},{punctures}}} has complexity {complexity} < 1")]
    LowComplexity {
        genus: u32,
        punctures: u32,
        complexity: i64,
    },

    #[error("slope (0, 0) is not a curve")]
    ZeroSlope,

    #[error("matrix [[{0}, {1}], [{2}, {3}]] does not have determinant 1")]
    NotUnimodular(i64, i64, i64, i64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("coordinate {index} is negative or not finite: {value}")]
    BadCoordinate { index: usize, value: f64 },

    #[error("invalid cone complex: {0}")]
    InvalidComplex(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("point is not in the complex: {0}")]
    PointNotInComplex(String),

    #[error("map is not a simplicial automorphism: {0}")]
    NotAutomorphism(String),

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),

    #[error("linear program failed: {0}")]
    Solver(String),

    #[error("invalid trace coordinates ({x}, {y}, {z}): {reason}")]
    InvalidTrace {
        x: f64,
        y: f64,
        z: f64,
        reason: String,
    },

    #[error("length must be positive and finite, got {0}")]
    BadLength(f64),

    #[error("upper half-plane point has nonpositive height {0}")]
    NotInUpperHalfPlane(f64),

    #[error("pants curve {index} has length {length} > epsilon0 = {eps0}")]
    NotThin { index: usize, length: f64, eps0: f64 },

    #[error("model coordinate must be nonnegative, got {0}")]
    NegativeModelPoint(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
