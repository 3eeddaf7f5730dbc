use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("quadratic form is not bosonic-stable: {0}")]
    Instability(String),

    /// The form has a gapless normal mode; its vacuum is not defined.
    #[error("quadratic form has a zero mode (smallest stiffness eigenvalue {stiffness:e})")]
    ZeroMode { stiffness: f64 },

    #[error("moments violate the uncertainty bound: dx*dp = {hp}")]
    UncertaintyViolation { hp: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("branch sign {epsilon} is not allowed in the {phase} phase")]
    Branch { epsilon: i8, phase: &'static str },

    /// A quantity diverges at the critical point as |lambda - lambda_cr|^exponent.
    #[error("divergence at the critical point (exponent {exponent})")]
    CriticalPointDivergence { exponent: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("Fock cutoff error: {0}")]
    Cutoff(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("budget exceeded: {required} nonzeros requested, limit {limit}")]
    BudgetExceeded { required: usize, limit: usize },

    #[error("mean-field minimization failed: {0}")]
    MeanField(String),

    #[error("outside the validity regime: {0}")]
    Regime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
