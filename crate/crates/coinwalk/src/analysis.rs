//! Observables: probability distributions, moments, the chirality-mixing
//! profile G, and mean-position sweeps over φ = α + γ.
//!
//! The headline fact this module measures: with the balanced initial state
//! (|0L⟩ + i|0R⟩)/√2, the mean position after t steps is a pure sinusoid
//! ⟨x⟩ = G(β, t)·sin(α + γ). The amplitude G is produced two independent
//! ways, by subtracting distributions at φ = ±π/2 ([`extract_g`]) and by
//! least-squares fitting a φ sweep ([`sweep_mean_position`]), and the two
//! must agree.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coin::CoinParams;
use crate::error::Result;
use crate::walk::{evolve, Engine, InitialSpec, WalkState};

/// One lattice site of a probability distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SiteProbability {
    pub x: i64,
    pub p_l: f64,
    pub p_r: f64,
}

impl SiteProbability {
    pub fn total(&self) -> f64 {
        self.p_l + self.p_r
    }
}

/// Per-site probabilities P^L(x), P^R(x) after t steps, dense over [−t, t]
/// in ascending x.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    t: usize,
    entries: Vec<SiteProbability>,
}

impl Distribution {
    /// Squared moduli of the state's amplitudes.
    pub fn from_state(state: &WalkState) -> Self {
        let entries = state
            .sites()
            .map(|(x, l, r)| SiteProbability {
                x,
                p_l: l.norm_sqr(),
                p_r: r.norm_sqr(),
            })
            .collect();
        Self {
            t: state.t(),
            entries,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &[SiteProbability] {
        &self.entries
    }

    fn index_of(&self, x: i64) -> Option<usize> {
        let first = self.entries.first()?.x;
        let idx = x - first;
        if idx < 0 || idx as usize >= self.entries.len() {
            None
        } else {
            Some(idx as usize)
        }
    }

    /// P^L(x); zero outside the support.
    pub fn p_l(&self, x: i64) -> f64 {
        self.index_of(x).map_or(0.0, |i| self.entries[i].p_l)
    }

    /// P^R(x); zero outside the support.
    pub fn p_r(&self, x: i64) -> f64 {
        self.index_of(x).map_or(0.0, |i| self.entries[i].p_r)
    }

    /// P(x) = P^L(x) + P^R(x).
    pub fn probability(&self, x: i64) -> f64 {
        self.index_of(x).map_or(0.0, |i| self.entries[i].total())
    }

    /// Σ_x P(x); 1 up to rounding for any evolved state.
    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(SiteProbability::total).sum()
    }

    /// ⟨x⟩ = Σ_x x·P(x).
    pub fn mean_position(&self) -> f64 {
        self.entries.iter().map(|e| e.x as f64 * e.total()).sum()
    }

    /// Add `delta` to P^L at site `x`. Deliberate corruption for
    /// negative-control fixtures; see [`crate::verify`].
    pub fn nudge_site(&mut self, x: i64, delta: f64) {
        if let Some(i) = self.index_of(x) {
            self.entries[i].p_l += delta;
        }
    }
}

/// Shorthand for evolving and immediately taking probabilities.
pub fn distribution(state: &WalkState) -> Distribution {
    Distribution::from_state(state)
}

/// ⟨x⟩ of a distribution.
pub fn mean_position(d: &Distribution) -> f64 {
    d.mean_position()
}

/// Largest per-component difference |ΔP^L(x)| or |ΔP^R(x)| over the union
/// of two supports.
pub fn max_component_difference(a: &Distribution, b: &Distribution) -> f64 {
    let lo = a
        .entries
        .first()
        .map_or(0, |e| e.x)
        .min(b.entries.first().map_or(0, |e| e.x));
    let hi = a
        .entries
        .last()
        .map_or(0, |e| e.x)
        .max(b.entries.last().map_or(0, |e| e.x));
    let mut worst = 0.0f64;
    for x in lo..=hi {
        worst = worst
            .max((a.p_l(x) - b.p_l(x)).abs())
            .max((a.p_r(x) - b.p_r(x)).abs());
    }
    worst
}

/// Largest violation of the mirror identities P^R_{|0L⟩}(x) = P^L_{|0R⟩}(−x)
/// and P^L_{|0L⟩}(x) = P^R_{|0R⟩}(−x).
pub fn max_mirror_difference(from_l: &Distribution, from_r: &Distribution) -> f64 {
    let t = from_l.t().max(from_r.t()) as i64;
    let mut worst = 0.0f64;
    for x in -t..=t {
        worst = worst
            .max((from_l.p_r(x) - from_r.p_l(-x)).abs())
            .max((from_l.p_l(x) - from_r.p_r(-x)).abs());
    }
    worst
}

/// How α and γ are chosen for a given φ = α + γ. The mean position only
/// feels the sum, so the split is a free gauge; verification sweeps vary it
/// on purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSplit {
    /// α = 0, γ = φ.
    Zero,
    /// α = γ = φ/2 (the default).
    Half,
    /// α = φ, γ = 0.
    Full,
}

impl AlphaSplit {
    pub fn split(&self, phi: f64) -> (f64, f64) {
        match self {
            Self::Zero => (0.0, phi),
            Self::Half => (phi / 2.0, phi / 2.0),
            Self::Full => (phi, 0.0),
        }
    }
}

/// The chirality-mixing profile extracted at one (β, t).
///
/// For an initial state m|0L⟩ + n|0R⟩ evolved under an SU(2) coin, the
/// per-site probabilities decompose as
///
/// ```text
///   P^L(x) = |m|²·B_LL(x) + |n|²·B_LR(x) − c(m, n, φ)·G^L(x)
///   P^R(x) = |m|²·B_RL(x) + |n|²·B_RR(x) − c(m, n, φ)·G^R(x)
/// ```
///
/// with cross coefficient c = e^{−iφ}m̄n + e^{iφ}mn̄ ∈ ℝ. The baselines B
/// and the profiles G^L, G^R depend only on β and t, which is exactly what
/// [`crate::verify::Checker::theorem3`] stresses.
#[derive(Debug, Clone, PartialEq)]
pub struct GProfile {
    beta: f64,
    t: usize,
    /// G^L over x = −t..=t.
    g_l: Vec<f64>,
    /// G^R over x = −t..=t.
    g_r: Vec<f64>,
    /// −Σ_x x·(G^L(x) + G^R(x)); the sinusoid amplitude G(β, t).
    g_total: f64,
    /// P^L and P^R from |0L⟩, then from |0R⟩, over x = −t..=t.
    base_l_from_l: Vec<f64>,
    base_r_from_l: Vec<f64>,
    base_l_from_r: Vec<f64>,
    base_r_from_r: Vec<f64>,
}

impl GProfile {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn g_total(&self) -> f64 {
        self.g_total
    }

    pub fn g_l(&self) -> &[f64] {
        &self.g_l
    }

    pub fn g_r(&self) -> &[f64] {
        &self.g_r
    }

    fn idx(&self, x: i64) -> Option<usize> {
        let shifted = x + self.t as i64;
        if shifted < 0 || shifted as usize >= self.g_l.len() {
            None
        } else {
            Some(shifted as usize)
        }
    }

    pub fn g_l_at(&self, x: i64) -> f64 {
        self.idx(x).map_or(0.0, |i| self.g_l[i])
    }

    pub fn g_r_at(&self, x: i64) -> f64 {
        self.idx(x).map_or(0.0, |i| self.g_r[i])
    }

    /// Largest |ΔG| between two profiles of the same (β, t).
    pub fn max_profile_difference(&self, other: &Self) -> f64 {
        self.g_l
            .iter()
            .zip(&other.g_l)
            .chain(self.g_r.iter().zip(&other.g_r))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max)
    }

    /// Predict the distribution for m|0L⟩ + n|0R⟩ at angle sum `phi`
    /// without running a walk.
    pub fn predict(&self, m: Complex64, n: Complex64, phi: f64) -> Distribution {
        let cross = 2.0 * (Complex64::from_polar(1.0, -phi) * m.conj() * n).re;
        let w_l = m.norm_sqr();
        let w_r = n.norm_sqr();
        let entries = (0..self.g_l.len())
            .map(|i| SiteProbability {
                x: i as i64 - self.t as i64,
                p_l: w_l * self.base_l_from_l[i] + w_r * self.base_l_from_r[i]
                    - cross * self.g_l[i],
                p_r: w_l * self.base_r_from_l[i] + w_r * self.base_r_from_r[i]
                    - cross * self.g_r[i],
            })
            .collect();
        Distribution { t: self.t, entries }
    }
}

/// Trait alias for anything that can evolve a walk; the verification layer
/// wraps an [`Engine`] with optional fault injection behind this.
pub trait Evolver: Sync {
    fn run(&self, spec: &InitialSpec, params: &CoinParams, t: usize) -> Result<WalkState>;
}

impl Evolver for Engine {
    fn run(&self, spec: &InitialSpec, params: &CoinParams, t: usize) -> Result<WalkState> {
        Engine::run(self, spec, params, t)
    }
}

/// Extract G^L, G^R at (β, t) using the default α = γ split.
pub fn extract_g<E: Evolver + ?Sized>(beta: f64, t: usize, engine: &E) -> Result<GProfile> {
    extract_g_with_split(beta, t, engine, AlphaSplit::Half)
}

/// Extract G^L, G^R at (β, t).
///
/// Runs the balanced state at φ = ±π/2, where the cross coefficient is
/// exactly ∓1, so G^L(x) = [P^L_{φ=−π/2}(x) − P^L_{φ=+π/2}(x)]/2 and
/// likewise for G^R. The φ-independent baselines come from the two pure
/// initial states. Which (α, γ) realizes each φ is irrelevant by the
/// α/γ-independence theorems; `split` exists so tests can prove that.
pub fn extract_g_with_split<E: Evolver + ?Sized>(
    beta: f64,
    t: usize,
    engine: &E,
    split: AlphaSplit,
) -> Result<GProfile> {
    use std::f64::consts::FRAC_PI_2;

    let len = 2 * t + 1;
    let params_at = |phi: f64| -> Result<CoinParams> {
        let (alpha, gamma) = split.split(phi);
        CoinParams::su2(alpha, beta, gamma)
    };

    let plus = params_at(FRAC_PI_2)?;
    let minus = params_at(-FRAC_PI_2)?;
    let dist_plus = Distribution::from_state(&engine.run(&InitialSpec::Symmetric, &plus, t)?);
    let dist_minus = Distribution::from_state(&engine.run(&InitialSpec::Symmetric, &minus, t)?);
    let from_l = Distribution::from_state(&engine.run(&InitialSpec::PureL, &plus, t)?);
    let from_r = Distribution::from_state(&engine.run(&InitialSpec::PureR, &plus, t)?);

    let mut g_l = vec![0.0; len];
    let mut g_r = vec![0.0; len];
    let mut base_l_from_l = vec![0.0; len];
    let mut base_r_from_l = vec![0.0; len];
    let mut base_l_from_r = vec![0.0; len];
    let mut base_r_from_r = vec![0.0; len];
    let mut g_total = 0.0;
    for i in 0..len {
        let x = i as i64 - t as i64;
        g_l[i] = 0.5 * (dist_minus.p_l(x) - dist_plus.p_l(x));
        g_r[i] = 0.5 * (dist_minus.p_r(x) - dist_plus.p_r(x));
        base_l_from_l[i] = from_l.p_l(x);
        base_r_from_l[i] = from_l.p_r(x);
        base_l_from_r[i] = from_r.p_l(x);
        base_r_from_r[i] = from_r.p_r(x);
        g_total -= x as f64 * (g_l[i] + g_r[i]);
    }

    Ok(GProfile {
        beta,
        t,
        g_l,
        g_r,
        g_total,
        base_l_from_l,
        base_r_from_l,
        base_l_from_r,
        base_r_from_r,
    })
}

/// One sampled point of a mean-position sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSample {
    pub phi: f64,
    pub mean_x: f64,
}

/// Least-squares fit of samples to A·sin φ + B·cos φ + C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SinusoidFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual_rms: f64,
}

/// A mean-position sweep over φ = α + γ at fixed (β, t), with its sinusoid
/// fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub beta: f64,
    pub t: usize,
    pub samples: Vec<SweepSample>,
    pub fit: SinusoidFit,
}

/// Inclusive uniform grid of `steps` φ values over [min, max].
pub fn phi_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![min];
    }
    (0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Evolve the balanced state at every φ and fit the sinusoid law.
///
/// Grid points run in parallel; results are gathered back in φ order so the
/// output is deterministic.
pub fn sweep_mean_position<E: Evolver + ?Sized>(
    beta: f64,
    t: usize,
    phis: &[f64],
    split: AlphaSplit,
    engine: &E,
) -> Result<SweepResult> {
    let samples: Vec<SweepSample> = phis
        .par_iter()
        .map(|&phi| {
            let (alpha, gamma) = split.split(phi);
            let params = CoinParams::su2(alpha, beta, gamma)?;
            let state = engine.run(&InitialSpec::Symmetric, &params, t)?;
            Ok(SweepSample {
                phi,
                mean_x: Distribution::from_state(&state).mean_position(),
            })
        })
        .collect::<Result<_>>()?;
    let fit = fit_sinusoid(&samples);
    Ok(SweepResult {
        beta,
        t,
        samples,
        fit,
    })
}

/// Ordinary least squares on the basis {sin φ, cos φ, 1}.
///
/// Solves the 3×3 normal equations by Gaussian elimination with partial
/// pivoting; a vanishing pivot (e.g. every sample at sin φ = 0) zeroes the
/// corresponding coefficient instead of failing.
pub fn fit_sinusoid(samples: &[SweepSample]) -> SinusoidFit {
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for s in samples {
        let basis = [s.phi.sin(), s.phi.cos(), 1.0];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += basis[r] * basis[c];
            }
            rhs[r] += basis[r] * s.mean_x;
        }
    }

    let coeffs = solve3(m, rhs);
    let [a, b, c] = coeffs;
    let residual_rms = if samples.is_empty() {
        0.0
    } else {
        let ss: f64 = samples
            .iter()
            .map(|s| {
                let fitted = a * s.phi.sin() + b * s.phi.cos() + c;
                (s.mean_x - fitted).powi(2)
            })
            .sum();
        (ss / samples.len() as f64).sqrt()
    };
    SinusoidFit {
        a,
        b,
        c,
        residual_rms,
    }
}

fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> [f64; 3] {
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for col in 0..3 {
        let pivot_row = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot_row][col].abs() <= 1e-12 * scale {
            // Rank-deficient direction: drop this basis function. Its
            // column is erased from every equation and the coefficient is
            // pinned to zero, keeping the other two equations intact.
            for row in &mut m {
                row[col] = 0.0;
            }
            m[col] = [0.0; 3];
            m[col][col] = 1.0;
            rhs[col] = 0.0;
            continue;
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot_vals = m[col];
        for row in col + 1..3 {
            let factor = m[row][col] / pivot_vals[col];
            for (slot, pivot_entry) in m[row][col..].iter_mut().zip(&pivot_vals[col..]) {
                *slot -= factor * pivot_entry;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut out = [0.0f64; 3];
    for col in (0..3).rev() {
        let mut acc = rhs[col];
        for c in col + 1..3 {
            acc -= m[col][c] * out[c];
        }
        out[col] = acc / m[col][col];
    }
    out
}

/// Convenience wrapper: evolve directly and return the distribution.
pub fn evolve_distribution(
    spec: &InitialSpec,
    params: &CoinParams,
    t: usize,
) -> Result<Distribution> {
    Ok(Distribution::from_state(&evolve(spec, params, t)?))
}
