use thiserror::Error;

/// Errors raised by the geometry, thickness and packing routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("great circle frame is not orthonormal (inner product {inner})")]
    NotOrthogonal { inner: f64 },

    #[error("circle radius must be positive, got {0}")]
    BadRadius(f64),

    #[error("coincident points: samples {0} and {1}")]
    CoincidentPoints(usize, usize),

    #[error("curve needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("consecutive samples {0} and {1} coincide")]
    RepeatedSample(usize, usize),

    #[error("link components {0} and {1} share a point")]
    ComponentsIntersect(usize, usize),

    #[error("ambient mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: &'static str, got: &'static str },

    #[error("caps overlap: density {density} exceeds one")]
    Overfull { density: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("packing overlap: core {a} and core {b} at translate {translate:?} are {distance} apart (need {required})")]
    Overlap {
        a: usize,
        b: usize,
        translate: [i64; 3],
        distance: f64,
        required: f64,
    },

    #[error("closest-point iteration did not converge; best distance found {best}")]
    NoConvergence { best: f64 },

    #[error("inconsistent thickness: closed form {closed_form}, sampled {sampled}")]
    Inconsistent { closed_form: f64, sampled: f64 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
