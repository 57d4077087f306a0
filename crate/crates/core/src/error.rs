use thiserror::Error;

/// Everything that can go wrong inside the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate is not finite: ({t}, {v})")]
    NonFinite { t: f64, v: f64 },

    #[error("triangle vertices {first} and {second} coincide")]
    DuplicateVertices { first: usize, second: usize },

    #[error("triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,

    #[error("closed form requires every angle below 120 degrees, vertex {vertex} has {angle} rad")]
    PreconditionViolated { vertex: usize, angle: f64 },

    #[error("invalid solver parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("Weiszfeld iteration did not converge in {iterations} steps (last step {last_step:e})")]
    NoConvergence { iterations: u32, last_step: f64 },

    #[error("series needs at least 3 points, got {len}")]
    SeriesTooShort { len: usize },

    #[error("time coordinate not strictly increasing at position {index}")]
    NonMonotonicTime { index: usize },

    #[error("at least {required} values required, got {got}")]
    InsufficientData { required: usize, got: usize },

    #[error("input is empty")]
    EmptyInput,

    #[error("length mismatch: {originals} originals vs {smoothed} smoothed values")]
    LengthMismatch { originals: usize, smoothed: usize },

    #[error("mean is zero, coefficient of variation undefined")]
    ZeroMean,

    #[error("mean of smoothed values is zero, coefficient of variation undefined")]
    ZeroMPhi,

    #[error("interval lower bound {low} exceeds upper bound {high}")]
    InvalidInterval { low: f64, high: f64 },

    #[error("exponential sum is not real at t = {t}: imaginary part {imag:e}")]
    NonRealResult { t: f64, imag: f64 },
}

impl Error {
    /// True for errors caused by the shape of the input data rather than by
    /// the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::SeriesTooShort { .. }
                | Error::NonMonotonicTime { .. }
                | Error::InsufficientData { .. }
                | Error::EmptyInput
                | Error::LengthMismatch { .. }
                | Error::InvalidInterval { .. }
                | Error::InvalidParameter(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
