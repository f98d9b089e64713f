use thiserror::Error;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid working precision, tolerances, or mixed precision contexts.
    #[error("configuration error: {0}")]
    Config(String),

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The coefficient structure collapses (zero divisor, vanishing polynomial).
    #[error("degenerate structure: {0}")]
    Degenerate(String),

    /// The root finder ran out of iterations.
    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NoConvergence {
        iterations: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    /// A decimal string could not be parsed.
    #[error("cannot parse `{input}` as a decimal number")]
    Parse { input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
