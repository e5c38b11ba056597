use num_complex::Complex64;
use thiserror::Error;

/// Every failure mode of the toolkit. Variants carry enough context for a
/// caller to report or recover without re-running the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("non-dissipative boundary parameter: Im h = {im_h} (need Im h > 0)")]
    NonDissipative { im_h: f64 },

    #[error("Weyl solver did not converge at z = {z}: relative change {last_change:e} at X_max = {x_max}")]
    Convergence { z: Complex64, x_max: f64, last_change: f64 },

    #[error("m(-0) diverges (Dirichlet-type model); {detail}")]
    Divergent { detail: String },

    #[error("invalid Weyl model: {0}")]
    InvalidModel(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("pole: denominator {denominator} vanishes")]
    Pole { denominator: Complex64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("kappa = {kappa} is below the attainable bound kappa0 = {kappa0}")]
    KappaBelowBound { kappa: f64, kappa0: f64 },

    #[error("entropy S = {entropy} is unattainable in this regime (S_max = {max_entropy})")]
    EntropyUnattainable { entropy: f64, max_entropy: f64 },

    #[error("infinite entropy: the optimum is h = -m(i) = {h}")]
    InfiniteEntropy { h: Complex64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable tag used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NonDissipative { .. } => "non-dissipative",
            Error::Convergence { .. } => "convergence",
            Error::Divergent { .. } => "divergent",
            Error::InvalidModel(_) => "invalid-model",
            Error::InvalidPotential(_) => "invalid-potential",
            Error::Pole { .. } => "pole",
            Error::Degenerate(_) => "degenerate",
            Error::KappaBelowBound { .. } => "kappa-below-bound",
            Error::EntropyUnattainable { .. } => "entropy-unattainable",
            Error::InfiniteEntropy { .. } => "infinite-entropy",
        }
    }
}
