//! Deterministic artifact rendering.
//!
//! CSV layout: `#`-prefixed metadata lines, one column-header row, data
//! rows, and (for sweeps) a `#`-prefixed fit footer. Every float prints as
//! its shortest round-trip decimal, so byte-identical configs produce
//! byte-identical files and re-parsing reproduces the in-memory values
//! exactly.

use std::fmt::Write as _;

use coinwalk::{Distribution, SpectralMode, SweepResult, TheoremReport};

use crate::config::{format_float, RunConfig};

fn coin_metadata(out: &mut String, config: &RunConfig) {
    let coin = &config.coin;
    for (name, angle) in [
        ("alpha", &coin.alpha),
        ("beta", &coin.beta),
        ("gamma", &coin.gamma),
        ("theta", &coin.theta),
    ] {
        let _ = writeln!(
            out,
            "# {name} = {} = {}",
            angle.literal(),
            format_float(angle.radians())
        );
    }
}

/// The evolve artifact: one row per lattice site.
pub fn render_distribution_csv(
    config: &RunConfig,
    dist: &Distribution,
    discrepancy: Option<f64>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# coinwalk evolve");
    coin_metadata(&mut out, config);
    let _ = writeln!(out, "# init = {}", config.init);
    let _ = writeln!(out, "# t = {}", config.t);
    let _ = writeln!(out, "# engine = {}", config.engine);
    if let Some(d) = discrepancy {
        let _ = writeln!(out, "# max_engine_discrepancy = {}", format_float(d));
    }
    let _ = writeln!(out, "x,p_l,p_r,p_total");
    for site in dist.entries() {
        if config.skip_zeros && site.total() == 0.0 {
            continue;
        }
        let _ = writeln!(
            out,
            "{},{},{},{}",
            site.x,
            format_float(site.p_l),
            format_float(site.p_r),
            format_float(site.total())
        );
    }
    out
}

/// The sweep artifact: (φ, ⟨x⟩) rows with the sinusoid fit as a footer.
pub fn render_sweep_csv(
    config: &RunConfig,
    sweep: &SweepResult,
    discrepancy: Option<f64>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# coinwalk sweep");
    let _ = writeln!(
        out,
        "# beta = {} = {}",
        config.coin.beta.literal(),
        format_float(config.coin.beta.radians())
    );
    let _ = writeln!(out, "# t = {}", config.t);
    let _ = writeln!(out, "# alpha_split = {}", config.sweep.alpha_split);
    let _ = writeln!(out, "# engine = {}", config.engine);
    let _ = writeln!(out, "# init = symmetric");
    if let Some(d) = discrepancy {
        let _ = writeln!(out, "# max_engine_discrepancy = {}", format_float(d));
    }
    let _ = writeln!(out, "phi,mean_x");
    for sample in &sweep.samples {
        let _ = writeln!(
            out,
            "{},{}",
            format_float(sample.phi),
            format_float(sample.mean_x)
        );
    }
    let _ = writeln!(out, "# fit_A = {}", format_float(sweep.fit.a));
    let _ = writeln!(out, "# fit_B = {}", format_float(sweep.fit.b));
    let _ = writeln!(out, "# fit_C = {}", format_float(sweep.fit.c));
    let _ = writeln!(
        out,
        "# residual_rms = {}",
        format_float(sweep.fit.residual_rms)
    );
    out
}

/// The spectrum artifact: dispersion angle, eigenvalues, and eigenvector
/// components at each sampled momentum.
pub fn render_spectrum_csv(config: &RunConfig, modes: &[SpectralMode]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# coinwalk spectrum");
    coin_metadata(&mut out, config);
    let _ = writeln!(out, "# k_samples = {}", modes.len());
    let _ = writeln!(
        out,
        "k,omega,lambda_a_re,lambda_a_im,lambda_b_re,lambda_b_im,\
         vec_a_l_re,vec_a_l_im,vec_a_r_re,vec_a_r_im,\
         vec_b_l_re,vec_b_l_im,vec_b_r_re,vec_b_r_im"
    );
    for mode in modes {
        let fields = [
            mode.k,
            mode.omega,
            mode.eigenvalue_a.re,
            mode.eigenvalue_a.im,
            mode.eigenvalue_b.re,
            mode.eigenvalue_b.im,
            mode.vec_a[0].re,
            mode.vec_a[0].im,
            mode.vec_a[1].re,
            mode.vec_a[1].im,
            mode.vec_b[0].re,
            mode.vec_b[0].im,
            mode.vec_b[1].re,
            mode.vec_b[1].im,
        ];
        let row: Vec<String> = fields.iter().map(|v| format_float(*v)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

fn angles_radians_json(config: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "alpha": config.coin.alpha.radians(),
        "beta": config.coin.beta.radians(),
        "gamma": config.coin.gamma.radians(),
        "theta": config.coin.theta.radians(),
    })
}

/// JSON envelope shared by all commands: the canonical config plus a
/// command-specific results object.
pub fn render_json(config: &RunConfig, results: serde_json::Value) -> String {
    let envelope = serde_json::json!({
        "config": serde_json::to_value(config).expect("config serializes"),
        "results": results,
    });
    let mut text = serde_json::to_string_pretty(&envelope).expect("results serialize");
    text.push('\n');
    text
}

pub fn distribution_results_json(
    config: &RunConfig,
    dist: &Distribution,
    discrepancy: Option<f64>,
) -> serde_json::Value {
    let sites: Vec<serde_json::Value> = dist
        .entries()
        .iter()
        .filter(|site| !(config.skip_zeros && site.total() == 0.0))
        .map(|site| {
            serde_json::json!({
                "x": site.x,
                "p_l": site.p_l,
                "p_r": site.p_r,
                "p_total": site.total(),
            })
        })
        .collect();
    serde_json::json!({
        "angles_radians": angles_radians_json(config),
        "mean_position": dist.mean_position(),
        "total_probability": dist.total_probability(),
        "max_engine_discrepancy": discrepancy,
        "sites": sites,
    })
}

pub fn sweep_results_json(
    config: &RunConfig,
    sweep: &SweepResult,
    discrepancy: Option<f64>,
) -> serde_json::Value {
    serde_json::json!({
        "angles_radians": angles_radians_json(config),
        "samples": sweep.samples,
        "fit_a": sweep.fit.a,
        "fit_b": sweep.fit.b,
        "fit_c": sweep.fit.c,
        "residual_rms": sweep.fit.residual_rms,
        "max_engine_discrepancy": discrepancy,
    })
}

pub fn spectrum_results_json(config: &RunConfig, modes: &[SpectralMode]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = modes
        .iter()
        .map(|mode| {
            serde_json::json!({
                "k": mode.k,
                "omega": mode.omega,
                "lambda_a": [mode.eigenvalue_a.re, mode.eigenvalue_a.im],
                "lambda_b": [mode.eigenvalue_b.re, mode.eigenvalue_b.im],
                "vec_a": [
                    [mode.vec_a[0].re, mode.vec_a[0].im],
                    [mode.vec_a[1].re, mode.vec_a[1].im],
                ],
                "vec_b": [
                    [mode.vec_b[0].re, mode.vec_b[0].im],
                    [mode.vec_b[1].re, mode.vec_b[1].im],
                ],
            })
        })
        .collect();
    serde_json::json!({
        "angles_radians": angles_radians_json(config),
        "modes": rows,
    })
}

pub fn verify_results_json(report: &TheoremReport) -> serde_json::Value {
    serde_json::to_value(report).expect("report serializes")
}

/// One parsed data row of a distribution CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionRow {
    pub x: i64,
    pub p_l: f64,
    pub p_r: f64,
    pub p_total: f64,
}

/// Re-parse a distribution CSV produced by [`render_distribution_csv`].
/// Shortest round-trip formatting makes this lossless.
pub fn parse_distribution_csv(text: &str) -> Result<Vec<DistributionRow>, String> {
    let mut rows = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.is_empty() || line.starts_with('x') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(format!("bad row `{line}`"));
        }
        rows.push(DistributionRow {
            x: fields[0]
                .parse()
                .map_err(|e| format!("bad x in `{line}`: {e}"))?,
            p_l: fields[1]
                .parse()
                .map_err(|e| format!("bad p_l in `{line}`: {e}"))?,
            p_r: fields[2]
                .parse()
                .map_err(|e| format!("bad p_r in `{line}`: {e}"))?,
            p_total: fields[3]
                .parse()
                .map_err(|e| format!("bad p_total in `{line}`: {e}"))?,
        });
    }
    Ok(rows)
}
