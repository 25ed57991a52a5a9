//! Momentum-space evolution.
//!
//! Under Ψ̃(k, t) = Σ_x Ψ(x, t)·e^{ikx} one walk step becomes multiplication
//! by the 2×2 unitary
//!
//! ```text
//!          ┌                                        ┐
//!   M_k =  │  e^{−i(k−α)} cos β   −e^{−i(k+γ)} sin β │
//!          │  e^{+i(k+γ)} sin β    e^{+i(k−α)} cos β │
//!          └                                        ┘
//! ```
//!
//! whose eigenvalues e^{∓iw} obey the dispersion relation
//! cos w = cos(k−α)·cos β. Evolving each momentum mode analytically and
//! inverting the transform reconstructs the position amplitudes exactly:
//! the walk's support after t steps is [−t, t], so any uniform grid of at
//! least 2t+1 momenta makes the inverse DFT an identity rather than an
//! approximation.
//!
//! The global phase θ of a U(2) coin multiplies every amplitude by e^{iθt};
//! it is reattached at the end so both engines agree amplitude-for-amplitude,
//! not just in distribution.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::coin::CoinParams;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::walk::{InitialSpec, WalkState};

/// Below this value of sin w the two eigenvalues coincide and the
/// closed-form eigenvectors are meaningless.
const DEGENERACY_TOL: f64 = 1e-9;

/// Below this squared eigenvector norm the closed-form eigenvectors lose
/// too much precision to divide by. C² shrinks like sin³β, so this only
/// triggers for near-diagonal coins.
const NORM_SQ_TOL: f64 = 1e-10;

/// The one-step momentum transfer matrix at quasi-momentum `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumMatrix {
    pub k: f64,
    pub matrix: Mat2,
}

/// Build M_k for the SU(2) part of `params` (θ never enters M_k).
pub fn momentum_matrix(k: f64, params: &CoinParams) -> MomentumMatrix {
    let (sin_b, cos_b) = params.beta().sin_cos();
    let ea = Complex64::from_polar(1.0, k - params.alpha());
    let eg = Complex64::from_polar(1.0, k + params.gamma());
    let matrix = Mat2::new([
        [ea.conj() * cos_b, -eg.conj() * sin_b],
        [eg * sin_b, ea * cos_b],
    ]);
    MomentumMatrix { k, matrix }
}

/// The eigensystem of M_k at one quasi-momentum.
///
/// `omega` is taken in [0, π] so that sin ω ≥ 0 and both eigenvector norms
/// are real and nonnegative. `eigenvalue_a` = e^{−iω} belongs to `vec_a`,
/// `eigenvalue_b` = e^{+iω} to `vec_b`; the two vectors are orthonormal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMode {
    pub k: f64,
    pub omega: f64,
    pub eigenvalue_a: Complex64,
    pub eigenvalue_b: Complex64,
    pub vec_a: [Complex64; 2],
    pub vec_b: [Complex64; 2],
}

/// The dispersion angle ω(k) ∈ [0, π] with cos ω = cos(k−α)·cos β.
pub fn dispersion(k: f64, params: &CoinParams) -> f64 {
    ((k - params.alpha()).cos() * params.beta().cos())
        .clamp(-1.0, 1.0)
        .acos()
}

/// Closed-form eigensystem of M_k.
///
/// Fails with [`Error::DegenerateMode`] when the eigenvalues coincide
/// (sin ω ≈ 0) or when an eigenvector norm nearly vanishes (sin β → 0);
/// propagation then falls back to direct matrix powers, which are exact.
pub fn eigensystem(k: f64, params: &CoinParams) -> Result<SpectralMode> {
    let alpha = params.alpha();
    let beta = params.beta();
    let omega = dispersion(k, params);
    let sin_w = omega.sin();
    if sin_w <= DEGENERACY_TOL {
        return Err(Error::DegenerateMode {
            k,
            sin_omega: sin_w,
        });
    }

    let dispersion_term = (k - alpha).sin() * beta.cos();
    let p = -Complex64::from_polar(beta.sin(), -(k + params.gamma()));
    let q_a = Complex64::new(0.0, -sin_w + dispersion_term);
    let q_b = Complex64::new(0.0, sin_w + dispersion_term);

    // Norms C^{a,b} = √(|P|² + |Q^{a,b}|²), which also equal
    // √(2(sin²ω ∓ cos β sin(k−α) sin ω)); the direct form is the
    // numerically stable one.
    let c_a_sq = p.norm_sqr() + q_a.norm_sqr();
    let c_b_sq = p.norm_sqr() + q_b.norm_sqr();
    if c_a_sq <= NORM_SQ_TOL || c_b_sq <= NORM_SQ_TOL {
        return Err(Error::DegenerateMode {
            k,
            sin_omega: sin_w,
        });
    }
    let c_a = c_a_sq.sqrt();
    let c_b = c_b_sq.sqrt();

    Ok(SpectralMode {
        k,
        omega,
        eigenvalue_a: Complex64::from_polar(1.0, -omega),
        eigenvalue_b: Complex64::from_polar(1.0, omega),
        vec_a: [p / c_a, q_a / c_a],
        vec_b: [p / c_b, q_b / c_b],
    })
}

/// Eigensystem that never fails: where the closed form degenerates the coin
/// is (numerically) diagonal, so the canonical basis vectors are returned,
/// paired with whichever diagonal entry is nearer each eigenvalue. Used by
/// spectrum dumps, which need a row at every k.
pub fn eigensystem_or_diagonal(k: f64, params: &CoinParams) -> SpectralMode {
    match eigensystem(k, params) {
        Ok(mode) => mode,
        Err(_) => {
            let omega = dispersion(k, params);
            let eigenvalue_a = Complex64::from_polar(1.0, -omega);
            let eigenvalue_b = Complex64::from_polar(1.0, omega);
            let m = momentum_matrix(k, params).matrix;
            let e_l = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
            let e_r = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
            let (vec_a, vec_b) =
                if (m.entry(0, 0) - eigenvalue_a).norm() <= (m.entry(1, 1) - eigenvalue_a).norm() {
                    (e_l, e_r)
                } else {
                    (e_r, e_l)
                };
            SpectralMode {
                k,
                omega,
                eigenvalue_a,
                eigenvalue_b,
                vec_a,
                vec_b,
            }
        }
    }
}

/// Uniform momentum grid −π + 2πj/n, j = 0..n (the propagation grid; exact
/// for any walk with 2t + 1 ≤ n support points).
fn propagation_grid(samples: usize) -> impl Iterator<Item = f64> {
    (0..samples).map(move |j| -PI + 2.0 * PI * j as f64 / samples as f64)
}

/// Inclusive uniform grid over [−π, π] with `samples` points, as written by
/// spectrum dumps. For odd `samples` the grid contains k = 0.
pub fn spectrum_grid(samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![-PI];
    }
    (0..samples)
        .map(|j| -PI + 2.0 * PI * j as f64 / (samples - 1) as f64)
        .collect()
}

/// Evolve `spec` for `t` steps entirely in momentum space and reconstruct
/// the position amplitudes by inverse DFT.
///
/// `samples` must be at least 2t + 2 so the circular reconstruction is a
/// strict superset of the walk's support. Momenta where the closed-form
/// eigensystem degenerates are propagated by direct matrix powers instead.
pub fn propagate_fourier(
    spec: &InitialSpec,
    params: &CoinParams,
    t: usize,
    samples: usize,
) -> Result<WalkState> {
    let min = 2 * t + 2;
    if samples < min {
        return Err(Error::TooFewSamples { samples, t, min });
    }
    spec.validate()?;
    let (m, n) = spec.amplitudes();
    let psi0 = [m, n];

    // The initial state sits entirely at x = 0, so Ψ̃(k, 0) = (m, n) at
    // every k.
    let modes: Vec<[Complex64; 2]> = propagation_grid(samples)
        .map(|k| match eigensystem(k, params) {
            Ok(mode) => {
                let c_a = mode.vec_a[0].conj() * psi0[0] + mode.vec_a[1].conj() * psi0[1];
                let c_b = mode.vec_b[0].conj() * psi0[0] + mode.vec_b[1].conj() * psi0[1];
                let ph_a = Complex64::from_polar(1.0, -mode.omega * t as f64);
                let ph_b = Complex64::from_polar(1.0, mode.omega * t as f64);
                [
                    c_a * ph_a * mode.vec_a[0] + c_b * ph_b * mode.vec_b[0],
                    c_a * ph_a * mode.vec_a[1] + c_b * ph_b * mode.vec_b[1],
                ]
            }
            Err(_) => momentum_matrix(k, params).matrix.pow(t).mul_vec(psi0),
        })
        .collect();

    // Inverse transform: Ψ(x, t) = (1/N) Σ_j Ψ̃(k_j, t)·e^{−i k_j x}.
    let global_phase = Complex64::from_polar(1.0, params.theta() * t as f64);
    let weight = global_phase / samples as f64;
    let amps: Vec<[Complex64; 2]> = (-(t as i64)..=t as i64)
        .map(|x| {
            let mut l = Complex64::new(0.0, 0.0);
            let mut r = Complex64::new(0.0, 0.0);
            for (j, k) in propagation_grid(samples).enumerate() {
                let phase = Complex64::from_polar(1.0, -k * x as f64);
                l += modes[j][0] * phase;
                r += modes[j][1] * phase;
            }
            [l * weight, r * weight]
        })
        .collect();

    Ok(WalkState::from_parts(t, -(t as i64), amps))
}
