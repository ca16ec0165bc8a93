use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate single-qubit Hamiltonian: E0 = {e0}, E1 = {e1}")]
    DegenerateHamiltonian { e0: f64, e1: f64 },

    #[error("rank-deficient input: element {index} has residual norm {residual:e} after projection")]
    RankDeficient { index: usize, residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("operator is not normal: ||[L, L^dag]||_F = {residual:e}")]
    NotNormal { residual: f64 },

    #[error("Lindblad operator carries no mechanism metadata")]
    NoSpec,

    #[error("time step too large: dt * ||L|| = {product} > 1")]
    StepTooLarge { product: f64 },

    #[error("ill-conditioned eigenproblem: {0}")]
    IllConditioned(String),

    #[error("asymptotic frequency {omega} matches none of 0, +-dE, +-2dE (dE = {delta_e})")]
    UntaggedFrequency { omega: f64, delta_e: f64 },

    #[error("attractor with omega = {omega} has no adjoint partner")]
    PairingBroken { omega: f64 },

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the scenario runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Json(_) | Error::InvalidParam(_) | Error::InvalidState(_) => 2,
            Error::DegenerateHamiltonian { .. } => 2,
            Error::Io(_) => 1,
            _ => 3,
        }
    }
}
