//! Error types shared across the model and solver layers.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{name} = {value} is outside its domain")]
    Domain { name: &'static str, value: f64 },
    #[error("signal {s} lies outside the support [{lo}, {hi}]")]
    OutsideSupport { s: f64, lo: f64, hi: f64 },
    #[error("conditioning event at {s} has zero probability")]
    EmptyEvent { s: f64 },
    #[error("posterior transform undefined for degenerate interim belief {interim}")]
    UndefinedTransform { interim: f64 },
    #[error("invalid discrete signal table: {0}")]
    InvalidTable(String),
    #[error("target curve is degenerate: {0}")]
    DegenerateCurve(&'static str),
    #[error("target curve violates sign[s - psi(s)] = sign[psi'(s)] near s = {0}")]
    InvalidCurve(f64),
    #[error("model invariant violated: {0}")]
    Invariant(String),
    #[error("derivative not finite at rho = {0}")]
    NonFiniteDerivative(f64),
    #[error(transparent)]
    Ode(#[from] crate::num::ode::OdeError),
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("iteration did not converge after {iterations} iterations (trace of final sup-norm deltas: {deltas:?})")]
    Convergence { iterations: usize, deltas: Vec<f64> },
    #[error("no interior solution on the support; boundary behavior is not supported here")]
    BoundaryNotSupported,
    #[error("inner solve failed: {context}: {source}")]
    Inner {
        context: String,
        #[source]
        source: Box<SolveError>,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl SolveError {
    pub fn with_context(self, context: impl Into<String>) -> Self {
        SolveError::Inner { context: context.into(), source: Box::new(self) }
    }
}
