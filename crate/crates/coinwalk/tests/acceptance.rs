//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured worst-case number (`--nocapture` to see
//! them). Every tolerance is pinned in code; none is tuned at runtime.

use coinwalk::{
    default_probes, distribution, evolve, extract_g, max_component_difference,
    max_mirror_difference, phi_grid, propagate_fourier, sweep_mean_position, AlphaSplit, Checker,
    CoinParams, Complex64, Distribution, Engine, InitialSpec,
};
use rand::prelude::*;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::time::Instant;

fn random_su2(rng: &mut impl Rng) -> CoinParams {
    CoinParams::su2(
        rng.random_range(-PI..PI),
        rng.random_range(-PI..PI),
        rng.random_range(-PI..PI),
    )
    .unwrap()
}

/// Criterion 1 — two Hadamard steps from |0L⟩ give P(−2) = 1/4, P(0) = 1/2,
/// P(2) = 1/4, cross-checked against an exhaustive path enumeration, in
/// under a millisecond.
#[test]
fn criterion_01_hadamard_sanity() {
    // Independent oracle: sum the amplitude of every chirality path.
    fn path_sum(coin: &coinwalk::CoinMatrix, t: usize) -> std::collections::BTreeMap<i64, f64> {
        let mut probs = std::collections::BTreeMap::new();
        let mut amps: std::collections::BTreeMap<(i64, usize), Complex64> =
            std::collections::BTreeMap::new();
        for path in 0..(1usize << t) {
            let mut amp = Complex64::new(1.0, 0.0);
            let mut prev = 0usize; // start in L
            let mut x = 0i64;
            for s in 0..t {
                let next = (path >> s) & 1;
                amp *= coin.entry(next, prev);
                x += if next == 0 { -1 } else { 1 };
                prev = next;
            }
            *amps.entry((x, prev)).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        for ((x, _), a) in amps {
            *probs.entry(x).or_insert(0.0) += a.norm_sqr();
        }
        probs
    }

    let params = CoinParams::hadamard();
    let started = Instant::now();
    let dist = distribution(&evolve(&InitialSpec::PureL, &params, 2).unwrap());
    let elapsed = started.elapsed();

    let oracle = path_sum(&params.matrix(), 2);
    let mut worst = 0.0f64;
    for (x, expected) in [(-2i64, 0.25), (0, 0.5), (2, 0.25)] {
        worst = worst.max((dist.probability(x) - expected).abs());
        worst = worst.max((oracle[&x] - expected).abs());
    }
    assert!(worst <= 1e-12, "deviation {worst:.3e}");
    assert!(elapsed.as_micros() < 1000, "took {elapsed:?}, budget 1 ms");
    println!("criterion 1 PASS: hadamard t=2 sanity, deviation {worst:.3e}, {elapsed:?}");
}

/// Criterion 2 — distributions at θ ∈ {−π/2, 0, 0.7, 2.1} over the fixed
/// SU(2) point (π/2, π/4, π/2) agree entrywise to 1e-12 at t = 25.
#[test]
fn criterion_02_global_phase_invariance() {
    let params = CoinParams::su2(FRAC_PI_2, FRAC_PI_4, FRAC_PI_2).unwrap();
    let check = Checker::default()
        .lemma1(
            &params,
            &[-FRAC_PI_2, 0.0, 0.7, 2.1],
            &InitialSpec::PureL,
            25,
        )
        .unwrap();
    assert!(
        check.passed && check.tolerance == 1e-12,
        "violation {:.3e}",
        check.max_violation
    );
    println!(
        "criterion 2 PASS: global-phase invariance, violation {:.3e}",
        check.max_violation
    );
}

/// Criterion 3 — β = π/6, t = 30, |0L⟩ start: a 4×4 (α, γ) grid gives
/// pairwise distribution differences ≤ 1e-10.
#[test]
fn criterion_03_alpha_gamma_independence() {
    let grid = [0.0, FRAC_PI_6, FRAC_PI_3, FRAC_PI_2];
    let check = Checker::default()
        .theorem1(FRAC_PI_6, &grid, &grid, &InitialSpec::PureL, 30)
        .unwrap();
    assert!(
        check.passed && check.tolerance == 1e-10,
        "violation {:.3e}",
        check.max_violation
    );
    println!(
        "criterion 3 PASS: alpha/gamma independence, violation {:.3e}",
        check.max_violation
    );
}

/// Criterion 4 — amplitude reality conditions and distribution mirrors hold
/// to 1e-12 for 50 random SU(2) coins at t = 40.
#[test]
fn criterion_04_reality_and_mirror() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(40);
    let draws: Vec<CoinParams> = (0..50).map(|_| random_su2(&mut rng)).collect();
    let checker = Checker::default();
    let worst = draws
        .par_iter()
        .map(|params| {
            let reality = checker.theorem2(params, 40).unwrap();
            let mirror = checker.corollary2(params.beta(), 40).unwrap();
            reality.max_violation.max(mirror.max_violation)
        })
        .reduce(|| 0.0, f64::max);
    assert!(worst <= 1e-12, "violation {worst:.3e}");
    println!("criterion 4 PASS: reality + mirror over 50 draws, violation {worst:.3e}");
}

/// Criterion 5 — at β = π/6, t = 100, the mean position on a 9×9 (α, γ)
/// grid depends only on α + γ: the spread within each constant-sum class is
/// ≤ 1e-9 (reported as a worst-case standard deviation). Budget: 60 s.
#[test]
fn criterion_05_fig1_shape() {
    let started = Instant::now();
    let values = phi_grid(-PI, PI, 9);
    let cells: Vec<(usize, usize)> = (0..9).flat_map(|i| (0..9).map(move |j| (i, j))).collect();
    let means: Vec<((usize, usize), f64)> = cells
        .par_iter()
        .map(|&(i, j)| {
            let params = CoinParams::su2(values[i], FRAC_PI_6, values[j]).unwrap();
            let state = evolve(&InitialSpec::Symmetric, &params, 100).unwrap();
            ((i, j), distribution(&state).mean_position())
        })
        .collect();

    let mut classes: std::collections::BTreeMap<usize, Vec<f64>> = Default::default();
    for ((i, j), mean) in means {
        classes.entry(i + j).or_default().push(mean);
    }
    let worst_sd = classes
        .values()
        .map(|class| {
            let n = class.len() as f64;
            let mean = class.iter().sum::<f64>() / n;
            (class.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
        })
        .fold(0.0f64, f64::max);
    let elapsed = started.elapsed();
    assert!(worst_sd <= 1e-9, "worst in-class sd {worst_sd:.3e}");
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60 s");
    println!(
        "criterion 5 PASS: <x> depends on alpha+gamma only, worst sd {worst_sd:.3e}, {elapsed:?}"
    );
}

/// Criterion 6 — the 33-point φ sweep at β = π/6, t = 100 fits
/// A·sin φ + B·cos φ + C with |B|, |C|, rms ≤ 1e-8·A and A > 0, and the
/// whole sweep matches the frozen reference.
#[test]
fn criterion_06_fig2_shape() {
    #[derive(serde::Deserialize)]
    struct Golden {
        fit_a: f64,
        fit_b: f64,
        fit_c: f64,
        residual_rms: f64,
        samples: Vec<GoldenSample>,
    }
    #[derive(serde::Deserialize)]
    struct GoldenSample {
        phi: f64,
        mean_x: f64,
    }

    let sweep = sweep_mean_position(
        FRAC_PI_6,
        100,
        &phi_grid(-PI, PI, 33),
        AlphaSplit::Half,
        &Engine::Direct,
    )
    .unwrap();
    let a = sweep.fit.a;
    assert!(a > 0.0);
    assert!(sweep.fit.b.abs() <= 1e-8 * a, "B = {:.3e}", sweep.fit.b);
    assert!(sweep.fit.c.abs() <= 1e-8 * a, "C = {:.3e}", sweep.fit.c);
    assert!(
        sweep.fit.residual_rms <= 1e-8 * a,
        "rms = {:.3e}",
        sweep.fit.residual_rms
    );

    let golden: Golden = serde_json::from_str(include_str!("data/fig2_reference.json")).unwrap();
    assert!(
        (a - golden.fit_a).abs() <= 1e-9 * golden.fit_a,
        "A = {a:.12}, frozen {:.12}",
        golden.fit_a
    );
    assert!((sweep.fit.b - golden.fit_b).abs() <= 1e-10);
    assert!((sweep.fit.c - golden.fit_c).abs() <= 1e-10);
    assert!((sweep.fit.residual_rms - golden.residual_rms).abs() <= 1e-10);
    for (fresh, frozen) in sweep.samples.iter().zip(&golden.samples) {
        assert!((fresh.phi - frozen.phi).abs() <= 1e-12);
        assert!(
            (fresh.mean_x - frozen.mean_x).abs() <= 1e-8 * (1.0 + frozen.mean_x.abs()),
            "phi = {}: {} vs frozen {}",
            frozen.phi,
            fresh.mean_x,
            frozen.mean_x
        );
    }
    println!(
        "criterion 6 PASS: sinusoid fit A = {a:.12}, |B| = {:.3e}, |C| = {:.3e}, rms = {:.3e}",
        sweep.fit.b.abs(),
        sweep.fit.c.abs(),
        sweep.fit.residual_rms
    );
}

/// Criterion 7 — the G profile extracted at φ = ±π/2 predicts P^L, P^R for
/// five unseen (m, n, φ) combinations to 1e-10 at t = 50.
#[test]
fn criterion_07_g_profile_reconstruction() {
    let probes = default_probes();
    assert_eq!(probes.len(), 5);
    let check = Checker::default().theorem3(FRAC_PI_6, 50, &probes).unwrap();
    assert!(
        check.passed && check.tolerance == 1e-10,
        "violation {:.3e}",
        check.max_violation
    );
    println!(
        "criterion 7 PASS: G-profile reconstruction at 5 probes, violation {:.3e}",
        check.max_violation
    );
}

/// Criterion 8 — the balanced start under the Hadamard coin (φ = π) shows
/// no drift: |⟨x⟩| ≤ 1e-10 for every t ≤ 100.
#[test]
fn criterion_08_zero_drift_at_phi_pi() {
    let params = CoinParams::hadamard();
    let worst = (0..=100usize)
        .into_par_iter()
        .map(|t| {
            distribution(&evolve(&InitialSpec::Symmetric, &params, t).unwrap())
                .mean_position()
                .abs()
        })
        .reduce(|| 0.0, f64::max);
    assert!(worst <= 1e-10, "max |<x>| = {worst:.3e}");
    println!("criterion 8 PASS: zero drift at phi = pi, max |<x>| = {worst:.3e}");
}

/// Criterion 9 — direct and spectral amplitudes agree entrywise to 1e-9
/// over 200 random U(2) draws with t ≤ 50. Budget: 30 s.
#[test]
fn criterion_09_engine_equivalence() {
    let started = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(90);
    let draws: Vec<(CoinParams, InitialSpec, usize)> = (0..200)
        .map(|_| {
            let params = CoinParams::new(
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
            )
            .unwrap();
            let spec = match rng.random_range(0..3) {
                0 => InitialSpec::PureL,
                1 => InitialSpec::PureR,
                _ => InitialSpec::Symmetric,
            };
            let t = *[1usize, 7, 25, 50].choose(&mut rng).unwrap();
            (params, spec, t)
        })
        .collect();

    let worst = draws
        .par_iter()
        .map(|(params, spec, t)| {
            let direct = evolve(spec, params, *t).unwrap();
            let spectral = propagate_fourier(spec, params, *t, 2 * t + 2).unwrap();
            direct.max_amplitude_difference(&spectral)
        })
        .reduce(|| 0.0, f64::max);
    let elapsed = started.elapsed();
    assert!(worst <= 1e-9, "max engine difference {worst:.3e}");
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30 s");
    println!(
        "criterion 9 PASS: engine equivalence over 200 draws, max diff {worst:.3e}, {elapsed:?}"
    );
}

/// Criterion 10 — the Hadamard walk's drift from |0L⟩ at t = 100 sits in
/// the ballistic window |⟨x⟩|/t ∈ (0.28, 0.30), the |0R⟩ start mirrors it
/// to 1e-10, and both engines agree on the states to 1e-9.
#[test]
fn criterion_10_hadamard_drift_magnitude() {
    let params = CoinParams::hadamard();
    let direct_l = evolve(&InitialSpec::PureL, &params, 100).unwrap();
    let direct_r = evolve(&InitialSpec::PureR, &params, 100).unwrap();
    let spectral_l = propagate_fourier(&InitialSpec::PureL, &params, 100, 202).unwrap();
    let spectral_r = propagate_fourier(&InitialSpec::PureR, &params, 100, 202).unwrap();
    assert!(direct_l.max_amplitude_difference(&spectral_l) <= 1e-9);
    assert!(direct_r.max_amplitude_difference(&spectral_r) <= 1e-9);

    let mean_l = Distribution::from_state(&direct_l).mean_position();
    let mean_r = Distribution::from_state(&direct_r).mean_position();
    let rate = mean_l.abs() / 100.0;
    assert!(rate > 0.28 && rate < 0.30, "rate = {rate:.6}");
    assert!(
        (mean_l + mean_r).abs() <= 1e-10,
        "asymmetry {:.3e}",
        (mean_l + mean_r).abs()
    );
    println!(
        "criterion 10 PASS: hadamard drift rate {rate:.6}, mirror asymmetry {:.3e}",
        (mean_l + mean_r).abs()
    );
}

/// Companion check kept with the suite: the sinusoid amplitude measured by
/// the sweep equals −Σ x·(G^L + G^R) from the profile route, and the drift
/// really is nonzero away from φ = nπ.
#[test]
fn fit_amplitude_equals_g_total() {
    let sweep = sweep_mean_position(
        FRAC_PI_6,
        100,
        &phi_grid(-PI, PI, 33),
        AlphaSplit::Half,
        &Engine::Direct,
    )
    .unwrap();
    let profile = extract_g(FRAC_PI_6, 100, &Engine::Direct).unwrap();
    let rel = (profile.g_total() - sweep.fit.a).abs() / sweep.fit.a;
    assert!(rel <= 1e-8, "relative gap {rel:.3e}");

    for phi in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4] {
        let (alpha, gamma) = AlphaSplit::Half.split(phi);
        let params = CoinParams::su2(alpha, FRAC_PI_6, gamma).unwrap();
        let mean =
            distribution(&evolve(&InitialSpec::Symmetric, &params, 100).unwrap()).mean_position();
        assert!(mean.abs() > 0.1, "phi = {phi}: <x> = {mean}");
    }
}

/// Negative control for the whole suite: a deliberately corrupted engine
/// must fail, proving the checks are not vacuous.
#[test]
fn perturbed_amplitudes_fail_the_checks() {
    let checker = Checker {
        perturb: 1e-6,
        ..Checker::default()
    };
    let params = CoinParams::su2(FRAC_PI_2, FRAC_PI_6, FRAC_PI_2).unwrap();
    let lemma = checker
        .lemma1(
            &params,
            &[-FRAC_PI_2, 0.0, 0.7, 2.1],
            &InitialSpec::PureL,
            25,
        )
        .unwrap();
    let mirror = checker.corollary2(FRAC_PI_6, 40).unwrap();
    assert!(!lemma.passed);
    assert!(!mirror.passed);
}

/// Cross-engine equivalence also holds when the spectral side is the one
/// under test inside analysis code paths.
#[test]
fn spectral_engine_reproduces_the_sweep() {
    let phis = [0.4, 1.1, 2.0];
    let direct =
        sweep_mean_position(FRAC_PI_6, 30, &phis, AlphaSplit::Half, &Engine::Direct).unwrap();
    let spectral =
        sweep_mean_position(FRAC_PI_6, 30, &phis, AlphaSplit::Half, &Engine::spectral()).unwrap();
    for (d, s) in direct.samples.iter().zip(&spectral.samples) {
        assert!((d.mean_x - s.mean_x).abs() < 1e-9);
    }
}

/// The mirror identity written out distribution-to-distribution, as a
/// direct consumer of the public comparison helpers.
#[test]
fn mirror_helpers_agree_with_checker() {
    let params = CoinParams::su2(0.9, FRAC_PI_6, -0.2).unwrap();
    let from_l = distribution(&evolve(&InitialSpec::PureL, &params, 21).unwrap());
    let from_r = distribution(&evolve(&InitialSpec::PureR, &params, 21).unwrap());
    assert!(max_mirror_difference(&from_l, &from_r) <= 1e-12);
    assert!(max_component_difference(&from_l, &from_l) == 0.0);
}
