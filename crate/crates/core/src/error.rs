use thiserror::Error;

use crate::sio::Trajectory;

/// Errors raised by the solver and its building blocks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("division by zero in reciprocal")]
    DivisionByZero,

    #[error("invalid step size h = {0}")]
    InvalidStep(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported Gauss-Legendre rule with {0} nodes (supported: 1..=8)")]
    UnsupportedRule(usize),

    #[error("integrand is not finite at t = {node} (value {value})")]
    IntegrandNotFinite { node: f64, value: f64 },

    #[error("analytic solution gives {got} at t0 but y0 = {expected}")]
    InconsistentInitialValue { expected: f64, got: f64 },

    #[error("step from t = {t_i} failed at w = {w}: {source}")]
    StepFailure {
        t_i: f64,
        w: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("fixed-point iteration diverged at t = {t_i} (iteration {iteration}, value {value})")]
    Divergence { t_i: f64, iteration: usize, value: f64 },

    #[error("fixed-point iteration did not converge at t = {t_i} after {iterations} iterations (residual {residual:e})")]
    NotConverged { t_i: f64, iterations: usize, residual: f64 },

    #[error("solve aborted at step {step}: {cause}")]
    Aborted {
        step: usize,
        partial: Box<Trajectory>,
        cause: Box<Error>,
    },
}

impl Error {
    /// The partial trajectory carried by an aborted solve, if any.
    pub fn partial_trajectory(&self) -> Option<&Trajectory> {
        match self {
            Error::Aborted { partial, .. } => Some(partial),
            _ => None,
        }
    }

    /// The innermost cause for wrapped errors.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::StepFailure { source, .. } => source.root_cause(),
            Error::Aborted { cause, .. } => cause.root_cause(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
