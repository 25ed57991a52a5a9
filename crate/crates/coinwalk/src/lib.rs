//! One-dimensional discrete-time quantum walks with an arbitrary U(2) coin.
//!
//! A walker lives on the integer lattice with a two-level internal state
//! (chirality). Each step applies a coin unitary to the chirality at every
//! site, then shifts the L component one site left and the R component one
//! site right. This crate provides:
//!
//! - [`coin`]: the four-angle (α, β, γ, θ) coin family and its SU(2) part;
//! - [`walk`]: direct position-space evolution;
//! - [`spectral`]: the momentum-space engine: dispersion ω(k), closed-form
//!   eigenmodes of the transfer matrix M_k, and exact reconstruction by
//!   inverse DFT;
//! - [`analysis`]: distributions, mean position, the chirality-mixing
//!   profile G(β, x, t), and sweeps of ⟨x⟩ over φ = α + γ;
//! - [`verify`]: numerical certification of the invariance, symmetry, and
//!   mean-position properties, with pinned tolerances.
//!
//! The two engines compute the same amplitudes by completely different
//! routes, which makes their agreement the crate's strongest self-test:
//!
//! ```
//! use coinwalk::{evolve, propagate_fourier, CoinParams, InitialSpec};
//!
//! let params = CoinParams::hadamard();
//! let direct = evolve(&InitialSpec::PureL, &params, 10)?;
//! let spectral = propagate_fourier(&InitialSpec::PureL, &params, 10, 32)?;
//! assert!(direct.max_amplitude_difference(&spectral) < 1e-10);
//! # Ok::<(), coinwalk::Error>(())
//! ```

pub mod analysis;
pub mod coin;
mod error;
mod mat2;
pub mod spectral;
pub mod verify;
pub mod walk;

pub use analysis::{
    distribution, extract_g, extract_g_with_split, fit_sinusoid, max_component_difference,
    max_mirror_difference, mean_position, phi_grid, sweep_mean_position, AlphaSplit, Distribution,
    Evolver, GProfile, SinusoidFit, SiteProbability, SweepResult, SweepSample,
};
pub use coin::{CoinMatrix, CoinParams};
pub use error::{Error, Result};
pub use mat2::Mat2;
pub use num_complex::Complex64;
pub use spectral::{
    dispersion, eigensystem, eigensystem_or_diagonal, momentum_matrix, propagate_fourier,
    spectrum_grid, MomentumMatrix, SpectralMode,
};
pub use verify::{
    default_probes, run_suite, Checker, ReconstructionProbe, Suite, SuiteConfig, TheoremCheck,
    TheoremReport, Tolerances,
};
pub use walk::{evolve, Engine, InitialSpec, WalkState};

// The guide chapters under book/ double as doc-tests: every fenced Rust
// block in them is compiled and run by `cargo test --doc`, which keeps the
// prose and the API from drifting apart.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(coins, "../../../book/src/coins.md");
    chapter!(walking_the_line, "../../../book/src/walking-the-line.md");
    chapter!(momentum_space, "../../../book/src/momentum-space.md");
    chapter!(observables, "../../../book/src/observables.md");
    chapter!(symmetries, "../../../book/src/symmetries.md");
    chapter!(command_line, "../../../book/src/command-line.md");
}
