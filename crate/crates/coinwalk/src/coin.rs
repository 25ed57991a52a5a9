//! The four-angle U(2) coin.
//!
//! Every one-qubit unitary can be written as
//!
//! ```text
//!                      ┌                                  ┐
//!   U(α,β,γ,θ) = e^iθ  │  e^iα  cos β    −e^−iγ sin β     │
//!                      │  e^iγ  sin β     e^−iα cos β     │
//!                      └                                  ┘
//! ```
//!
//! with θ a global phase that never shows up in position distributions.
//! Dropping the e^iθ factor leaves the SU(2) member of the same family,
//! which is what the momentum-space machinery works with.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::Mat2;

/// A 2×2 coin matrix in (L, R) ordering: row/column 0 acts on the L
/// chirality, row/column 1 on R.
pub type CoinMatrix = Mat2;

/// The four angles (α, β, γ, θ) that parametrize a U(2) coin.
///
/// Angles are plain radians and are not reduced modulo 2π; the trigonometric
/// evaluation in [`CoinParams::matrix`] handles periodicity. Construction
/// rejects non-finite values, so a `CoinParams` always yields a unitary
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    theta: f64,
}

impl CoinParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, theta: f64) -> Result<Self> {
        for (name, value) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("theta", theta),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFiniteAngle { name, value });
            }
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            theta,
        })
    }

    /// The SU(2) point (α, β, γ) with no global phase.
    pub fn su2(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(alpha, beta, gamma, 0.0)
    }

    /// The Hadamard coin, reached at (π/2, π/4, π/2, −π/2).
    pub fn hadamard() -> Self {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
        Self {
            alpha: FRAC_PI_2,
            beta: FRAC_PI_4,
            gamma: FRAC_PI_2,
            theta: -FRAC_PI_2,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The angle combination φ = α + γ that the mean position depends on.
    pub fn phi(&self) -> f64 {
        self.alpha + self.gamma
    }

    /// A copy with the global phase removed (θ = 0).
    pub fn without_phase(&self) -> Self {
        Self {
            theta: 0.0,
            ..*self
        }
    }

    /// A copy with α and γ replaced, keeping β and θ.
    pub fn with_alpha_gamma(&self, alpha: f64, gamma: f64) -> Self {
        Self {
            alpha,
            gamma,
            ..*self
        }
    }

    /// The full U(2) coin matrix e^iθ · U^S(α, β, γ).
    pub fn matrix(&self) -> CoinMatrix {
        self.su2_matrix()
            .scale(Complex64::from_polar(1.0, self.theta))
    }

    /// The SU(2) part of the coin (θ discarded); its determinant is 1.
    pub fn su2_matrix(&self) -> CoinMatrix {
        let (sin_b, cos_b) = self.beta.sin_cos();
        let ea = Complex64::from_polar(1.0, self.alpha);
        let eg = Complex64::from_polar(1.0, self.gamma);
        Mat2::new([
            [ea * cos_b, -eg.conj() * sin_b],
            [eg * sin_b, ea.conj() * cos_b],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hadamard_point_gives_the_hadamard_matrix() {
        let h = CoinParams::hadamard();
        assert_eq!(
            (h.alpha(), h.beta(), h.gamma(), h.theta()),
            (FRAC_PI_2, FRAC_PI_4, FRAC_PI_2, -FRAC_PI_2)
        );
        assert!((h.phi() - PI).abs() < 1e-15);

        let m = h.matrix();
        let s = 1.0 / 2.0f64.sqrt();
        let expected = Mat2::new([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]);
        assert!(m.max_entry_difference(&expected) < 1e-15);
    }

    #[test]
    fn zero_angles_give_identity() {
        let m = CoinParams::new(0.0, 0.0, 0.0, 0.0).unwrap().matrix();
        assert!(m.max_entry_difference(&Mat2::identity()) == 0.0);
    }

    #[test]
    fn quarter_turn_beta_gives_chirality_swap() {
        let m = CoinParams::new(0.0, FRAC_PI_2, 0.0, 0.0).unwrap().matrix();
        let expected = Mat2::new([[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
        assert!(m.max_entry_difference(&expected) < 1e-16);
    }

    #[test]
    fn su2_part_of_hadamard_is_i_times_hadamard() {
        let m = CoinParams::hadamard().su2_matrix();
        let s = 1.0 / 2.0f64.sqrt();
        let expected = Mat2::new([[c(0.0, s), c(0.0, s)], [c(0.0, s), c(0.0, -s)]]);
        assert!(m.max_entry_difference(&expected) < 1e-15);
    }

    #[test]
    fn su2_part_discards_theta() {
        let m = CoinParams::new(0.0, 0.0, 0.0, 5.0).unwrap().su2_matrix();
        assert!(m.max_entry_difference(&Mat2::identity()) == 0.0);
    }

    #[test]
    fn su2_part_direct_substitution() {
        let m = CoinParams::su2(0.3, FRAC_PI_6, -0.3).unwrap().su2_matrix();
        let e = Complex64::from_polar(1.0, 0.3);
        let half = 0.5;
        let root3_half = 3.0f64.sqrt() / 2.0;
        let expected = Mat2::new([
            [e * root3_half, -e * half],
            [e.conj() * half, e.conj() * root3_half],
        ]);
        assert!(m.max_entry_difference(&expected) < 1e-15);
    }

    #[test]
    fn non_finite_angles_are_rejected() {
        assert!(matches!(
            CoinParams::new(f64::NAN, 0.0, 0.0, 0.0),
            Err(Error::NonFiniteAngle { name: "alpha", .. })
        ));
        assert!(matches!(
            CoinParams::new(0.0, 0.0, f64::INFINITY, 0.0),
            Err(Error::NonFiniteAngle { name: "gamma", .. })
        ));
    }

    #[test]
    fn arbitrary_angles_give_a_unitary_matrix() {
        let m = CoinParams::new(0.7, 1.1, -2.2, 0.4).unwrap().matrix();
        assert!(m.is_unitary(1e-12));
    }

    #[test]
    fn phase_factor_relates_u2_and_su2() {
        let p = CoinParams::new(1.3, -0.4, 2.9, 0.8).unwrap();
        let expected = p.su2_matrix().scale(Complex64::from_polar(1.0, 0.8));
        assert!(p.matrix().max_entry_difference(&expected) < 1e-15);
    }

    #[test]
    fn thousand_random_draws_are_unitary_with_unit_su2_determinant() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = CoinParams::new(
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
            )
            .unwrap();
            assert!(p.matrix().is_unitary(1e-12));
            let det = p.su2_matrix().determinant();
            assert!((det - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    proptest::proptest! {
        #[test]
        fn angles_are_two_pi_periodic(
            alpha in -6.3f64..6.3,
            beta in -6.3f64..6.3,
            gamma in -6.3f64..6.3,
            theta in -6.3f64..6.3,
        ) {
            use std::f64::consts::TAU;
            let base = CoinParams::new(alpha, beta, gamma, theta).unwrap().matrix();
            for shifted in [
                CoinParams::new(alpha + TAU, beta, gamma, theta).unwrap(),
                CoinParams::new(alpha, beta + TAU, gamma, theta).unwrap(),
                CoinParams::new(alpha, beta, gamma + TAU, theta).unwrap(),
                CoinParams::new(alpha, beta, gamma, theta + TAU).unwrap(),
            ] {
                proptest::prop_assert!(shifted.matrix().max_entry_difference(&base) < 1e-12);
            }
        }
    }
}
