use thiserror::Error;

/// Errors reported by the walk, spectral, and analysis layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coin angle was NaN or infinite.
    #[error("coin angle `{name}` must be finite, got {value}")]
    NonFiniteAngle { name: &'static str, value: f64 },

    /// A custom initial state failed |m|^2 + |n|^2 = 1.
    #[error("initial state is not normalized: |m|^2 + |n|^2 = {norm_sq}")]
    UnnormalizedInitialState { norm_sq: f64 },

    /// A matrix handed to the walk engine failed the unitarity check.
    #[error("coin matrix is not unitary: max |U†U - I| entry = {deviation:.3e}")]
    NonUnitaryCoin { deviation: f64 },

    /// The closed-form eigensystem is ill-conditioned at this quasi-momentum;
    /// callers should propagate this mode by direct matrix powers instead.
    #[error("momentum mode at k = {k} is degenerate (sin w = {sin_omega:.3e}); use the matrix-power fallback")]
    DegenerateMode { k: f64, sin_omega: f64 },

    /// Not enough momentum samples to reconstruct the walk's support exactly.
    #[error("{samples} momentum samples cannot resolve a {t}-step walk; need at least {min}")]
    TooFewSamples {
        samples: usize,
        t: usize,
        min: usize,
    },

    /// The alpha/gamma-independence theorem only covers the pure chirality
    /// initial states.
    #[error("this check applies only to the pure |0L> or |0R> initial states")]
    TheoremScope,
}

pub type Result<T> = std::result::Result<T, Error>;
