//! Direct position-space evolution.
//!
//! One step of the walk applies the coin to the chirality pair at every
//! site, then routes the new L component one site to the left and the new R
//! component one site to the right. Iterating from a state concentrated at
//! the origin produces the familiar ballistic cone: after t steps the
//! amplitudes live on [−t, t], and only on sites with x ≡ t (mod 2).

use num_complex::Complex64;

use crate::coin::{CoinMatrix, CoinParams};
use crate::error::{Error, Result};
use crate::spectral;

/// Unitarity tolerance applied when a caller hands `step` a raw matrix.
const STEP_UNITARITY_TOL: f64 = 1e-9;

/// Tolerance on |m|² + |n|² = 1 for custom initial states.
const INIT_NORM_TOL: f64 = 1e-12;

/// The initial coin state m·|0L⟩ + n·|0R⟩ at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialSpec {
    /// (m, n) = (1, 0).
    PureL,
    /// (m, n) = (0, 1).
    PureR,
    /// (m, n) = (1/√2, i/√2), the balanced state used for mean-position
    /// sweeps.
    Symmetric,
    /// Arbitrary normalized coefficients.
    Custom { m: Complex64, n: Complex64 },
}

impl InitialSpec {
    /// Build a custom initial state, rejecting non-normalized coefficients.
    pub fn custom(m: Complex64, n: Complex64) -> Result<Self> {
        let spec = Self::Custom { m, n };
        spec.validate()?;
        Ok(spec)
    }

    /// The coefficient pair (m, n) of |0L⟩ and |0R⟩.
    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match *self {
            Self::PureL => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            Self::PureR => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            Self::Symmetric => (Complex64::new(s, 0.0), Complex64::new(0.0, s)),
            Self::Custom { m, n } => (m, n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = self.amplitudes();
        let norm_sq = m.norm_sqr() + n.norm_sqr();
        if (norm_sq - 1.0).abs() > INIT_NORM_TOL {
            return Err(Error::UnnormalizedInitialState { norm_sq });
        }
        Ok(())
    }
}

/// The walker's wavefunction after `t` steps: a dense block of (L, R)
/// amplitude pairs covering [−t, t].
///
/// Parity-forbidden sites are stored as explicit zeros; the dense layout
/// keeps the stepping loop branch-free.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    t: usize,
    offset: i64,
    amps: Vec<[Complex64; 2]>,
}

impl WalkState {
    pub(crate) fn from_parts(t: usize, offset: i64, amps: Vec<[Complex64; 2]>) -> Self {
        Self { t, offset, amps }
    }

    /// The state at t = 0: (m, n) at the origin, nothing anywhere else.
    pub fn initial(spec: &InitialSpec) -> Result<Self> {
        spec.validate()?;
        let (m, n) = spec.amplitudes();
        Ok(Self {
            t: 0,
            offset: 0,
            amps: vec![[m, n]],
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Leftmost represented site (always −t for states built here).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// The (L, R) amplitude pair at site `x`; zero outside the stored block.
    pub fn amplitude(&self, x: i64) -> (Complex64, Complex64) {
        let idx = x - self.offset;
        if idx < 0 || idx as usize >= self.amps.len() {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            let [l, r] = self.amps[idx as usize];
            (l, r)
        }
    }

    /// Iterate over (x, a_L(x), a_R(x)) in ascending x.
    pub fn sites(&self) -> impl Iterator<Item = (i64, Complex64, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, [l, r])| (self.offset + i as i64, *l, *r))
    }

    /// Σ |a_L|² + |a_R|² over all sites.
    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .map(|[l, r]| l.norm_sqr() + r.norm_sqr())
            .sum()
    }

    /// Largest amplitude magnitude found on a parity-forbidden site
    /// (x + t odd). Exactly zero for directly evolved states.
    pub fn parity_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (x, l, r) in self.sites() {
            if (x + self.t as i64).rem_euclid(2) == 1 {
                worst = worst.max(l.norm()).max(r.norm());
            }
        }
        worst
    }

    /// One step S(I⊗C): coin on every site, then the conditional shift.
    ///
    /// Validates that `coin` is unitary; [`evolve`] skips the check because a
    /// [`CoinParams`] matrix is unitary by construction.
    pub fn step(&self, coin: &CoinMatrix) -> Result<Self> {
        let deviation = coin.unitarity_error();
        if deviation > STEP_UNITARITY_TOL {
            return Err(Error::NonUnitaryCoin { deviation });
        }
        Ok(self.step_unchecked(coin))
    }

    fn step_unchecked(&self, coin: &CoinMatrix) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let mut next = vec![[zero, zero]; self.amps.len() + 2];
        let c = &coin.entries;
        for (i, [l, r]) in self.amps.iter().enumerate() {
            // After the coin, the L component belongs one site to the left
            // (new index i in the grown block) and the R component one site
            // to the right (new index i + 2).
            next[i][0] += c[0][0] * l + c[0][1] * r;
            next[i + 2][1] += c[1][0] * l + c[1][1] * r;
        }
        Self {
            t: self.t + 1,
            offset: self.offset - 1,
            amps: next,
        }
    }

    /// Largest entrywise amplitude difference against `other`, compared
    /// site by site over the union of both supports.
    pub fn max_amplitude_difference(&self, other: &Self) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.amps.len() as i64).max(other.offset + other.amps.len() as i64);
        let mut worst = 0.0f64;
        for x in lo..hi {
            let (al, ar) = self.amplitude(x);
            let (bl, br) = other.amplitude(x);
            worst = worst.max((al - bl).norm()).max((ar - br).norm());
        }
        worst
    }

    /// Add `delta` to the L amplitude at site `x`, growing the block if the
    /// site is outside it. This deliberately corrupts the state; it exists
    /// so negative-control fixtures can prove the verification suite reports
    /// failures instead of passing vacuously.
    pub fn perturb(&mut self, x: i64, delta: Complex64) {
        let idx = x - self.offset;
        if idx >= 0 && (idx as usize) < self.amps.len() {
            self.amps[idx as usize][0] += delta;
        }
    }
}

/// Evolve `spec` for `t` steps under the U(2) coin at `params`.
pub fn evolve(spec: &InitialSpec, params: &CoinParams, t: usize) -> Result<WalkState> {
    let coin = params.matrix();
    let mut state = WalkState::initial(spec)?;
    for _ in 0..t {
        state = state.step_unchecked(&coin);
    }
    Ok(state)
}

/// Which evolution engine computes a walk.
///
/// Both produce the same amplitudes; running an analysis under each and
/// comparing is the strongest self-test this crate has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Site-by-site stepping ([`evolve`]).
    Direct,
    /// Momentum-space eigenmode propagation followed by an exact inverse
    /// DFT. `samples: None` picks the smallest exact grid (2t + 2 points).
    Spectral { samples: Option<usize> },
}

impl Engine {
    pub fn spectral() -> Self {
        Self::Spectral { samples: None }
    }

    pub fn run(&self, spec: &InitialSpec, params: &CoinParams, t: usize) -> Result<WalkState> {
        match *self {
            Self::Direct => evolve(spec, params, t),
            Self::Spectral { samples } => {
                let samples = samples.unwrap_or(2 * t + 2);
                spectral::propagate_fourier(spec, params, t, samples)
            }
        }
    }
}
