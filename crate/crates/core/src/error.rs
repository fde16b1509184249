use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// `n + delta = 0`: the quantization condition has no finite root.
    #[error("no finite solution: level n = {n} does not exist when delta = 0")]
    NoFiniteSolution { n: u32 },

    /// The wavefunction phase prefactor `alpha / (1 - eps*beta)` blows up.
    #[error("singular regime: eps*beta = {eps_beta} is too close to (or above) 1")]
    SingularRegime { eps_beta: f64 },

    #[error("states belong to different models (alpha, beta)")]
    ParamsMismatch,

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("no bracket found for target {target} after {expansions} expansions")]
    BracketNotFound { target: f64, expansions: u32 },

    #[error("quadrature did not converge: value {value}, error estimate {error_estimate:e}")]
    Quadrature { value: String, error_estimate: f64 },
}
