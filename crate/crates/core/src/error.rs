use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants that signal a violated mathematical expectation (degeneracy,
/// generation failure, model mismatch) carry enough context to name the
/// offending class or check.
#[derive(Debug, Error)]
pub enum Error {
    #[error("surface index r = {0} is outside the supported range {1}")]
    RangeError(usize, &'static str),

    #[error("dimension mismatch: classes live on X_{left} and X_{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} coefficients, got {actual}")]
    CoefficientCount { expected: usize, actual: usize },

    #[error("{0} is not a root (self-intersection {1}, expected -2)")]
    NotARoot(String, i64),

    #[error("cannot contract {0}: coefficient of l_{1} is {2}, expected 0")]
    Contraction(String, usize, i64),

    #[error("{0} is not an exceptional class")]
    NotExceptional(String),

    #[error("orbit exceeded the cap of {0} elements")]
    OrbitOverflow(usize),

    #[error("{0} is not in the orbit of {1}")]
    NotInOrbit(String, String),

    #[error("{0} is not nef")]
    NotNef(String),

    #[error("invalid point configuration: {0}")]
    InvalidInput(String),

    #[error("degenerate configuration: {0}")]
    Degeneracy(String),

    #[error("no valid configuration after {0} attempts")]
    Sampling(usize),

    #[error("evaluation point lies on the zero locus of the section of {0}")]
    EvaluationDegeneracy(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("Pluecker model mismatch: {0}")]
    ModelMismatch(String),

    #[error("degree-one generation failed for {class}: rank {rank} < h0 {expected}")]
    GenerationFailure {
        class: String,
        rank: usize,
        expected: i64,
    },

    #[error("check failed: {0}")]
    CheckFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
