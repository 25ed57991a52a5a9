//! Command-line front end: evolve walks, sweep mean positions, dump
//! spectra, and run the verification suite, producing deterministic CSV or
//! JSON artifacts.
//!
//! Exit codes: 0 success, 1 configuration error, 2 I/O error,
//! 3 verification failure.

use clap::{Args, Parser, Subcommand};

use coinwalk_cli::{config, output};

use coinwalk::{
    eigensystem_or_diagonal, evolve, phi_grid, propagate_fourier, run_suite, spectrum_grid,
    sweep_mean_position, Checker, Distribution, Engine, SpectralMode, SuiteConfig, SweepResult,
    TheoremReport, WalkState,
};
use config::{
    Angle, CoinAngles, CommandKind, EngineKind, FormatKind, InitKind, RunConfig, SplitKind,
    SuiteKind, SweepConfig, ToleranceConfig,
};

const EXIT_CONFIG: i32 = 1;
const EXIT_IO: i32 = 2;
const EXIT_VERIFY: i32 = 3;

#[derive(Parser)]
#[command(
    name = "coinwalk",
    about = "One-dimensional quantum walks with a U(2) coin",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CoinArgs {
    /// Coin angle α (radians or a pi literal like "pi/6", "3*pi/4")
    #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
    alpha: Angle,
    /// Coin angle β
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true)]
    beta: Angle,
    /// Coin angle γ
    #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
    gamma: Angle,
    /// Global phase θ
    #[arg(long, default_value = "-pi/2", allow_hyphen_values = true)]
    theta: Angle,
}

impl CoinArgs {
    fn to_angles(&self) -> CoinAngles {
        CoinAngles {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
            theta: self.theta.clone(),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
    /// Artifact format
    #[arg(long, value_enum, default_value_t = FormatKind::Csv)]
    format: FormatKind,
    /// JSON RunConfig whose fields override the flags
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a walk and write its position distribution
    Evolve {
        #[command(flatten)]
        coin: CoinArgs,
        /// Initial state: L, R, or symmetric
        #[arg(long, default_value = "L")]
        init: InitKind,
        /// Number of steps
        #[arg(long, default_value_t = 100)]
        t: usize,
        /// Evolution engine
        #[arg(long, value_enum, default_value_t = EngineKind::Direct)]
        engine: EngineKind,
        /// Momentum samples for the spectral engine (0 = smallest exact grid)
        #[arg(long, default_value_t = 0)]
        k_samples: usize,
        /// Omit rows whose probability is exactly zero
        #[arg(long)]
        skip_zeros: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the mean position over φ = α + γ and fit A·sin φ + B·cos φ + C
    Sweep {
        #[command(flatten)]
        coin: CoinArgs,
        /// Number of steps
        #[arg(long, default_value_t = 100)]
        t: usize,
        /// Smallest φ in the sweep
        #[arg(long, default_value = "-pi", allow_hyphen_values = true)]
        phi_min: Angle,
        /// Largest φ in the sweep
        #[arg(long, default_value = "pi", allow_hyphen_values = true)]
        phi_max: Angle,
        /// Number of φ samples (inclusive grid)
        #[arg(long, default_value_t = 33)]
        phi_steps: usize,
        /// How φ is split into α and γ
        #[arg(long, value_enum, default_value_t = SplitKind::Half)]
        alpha_split: SplitKind,
        /// Evolution engine
        #[arg(long, value_enum, default_value_t = EngineKind::Direct)]
        engine: EngineKind,
        /// Momentum samples for the spectral engine (0 = smallest exact grid)
        #[arg(long, default_value_t = 0)]
        k_samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump the momentum-space eigensystem over [−π, π]
    Spectrum {
        #[command(flatten)]
        coin: CoinArgs,
        /// Number of momentum samples (inclusive grid over [−π, π])
        #[arg(long, default_value_t = 201)]
        k_samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the theorem verification suite and write its report as JSON
    Verify {
        #[command(flatten)]
        coin: CoinArgs,
        /// Initial state used by the checks that take one
        #[arg(long, default_value = "L")]
        init: InitKind,
        /// Number of steps
        #[arg(long, default_value_t = 50)]
        t: usize,
        /// Which checks to run
        #[arg(long, value_enum, default_value_t = SuiteKind::All)]
        suite: SuiteKind,
        /// Negative-control fault: amplitude added to every evolved state
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
        /// Amplitude-level tolerance override
        #[arg(long)]
        tol_amplitude: Option<f64>,
        /// Probability-level tolerance override
        #[arg(long)]
        tol_probability: Option<f64>,
        /// Mean-position tolerance override
        #[arg(long)]
        tol_mean_position: Option<f64>,
        /// Derived-quantity tolerance override
        #[arg(long)]
        tol_derived: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn default_sweep_config() -> SweepConfig {
    SweepConfig {
        phi_min: "-pi".parse().expect("valid literal"),
        phi_max: "pi".parse().expect("valid literal"),
        phi_steps: 33,
        alpha_split: SplitKind::Half,
    }
}

/// Collapse the parsed command line into one RunConfig, then overlay the
/// `--config` file (its fields win).
fn build_config(command: Command) -> Result<RunConfig, String> {
    let (config, config_path) = match command {
        Command::Evolve {
            coin,
            init,
            t,
            engine,
            k_samples,
            skip_zeros,
            output,
        } => (
            RunConfig {
                command: CommandKind::Evolve,
                coin: coin.to_angles(),
                init,
                t,
                engine,
                k_samples,
                sweep: default_sweep_config(),
                suite: SuiteKind::All,
                out: output.out,
                format: output.format,
                skip_zeros,
                tolerances: ToleranceConfig::default(),
                perturb: 0.0,
            },
            output.config,
        ),
        Command::Sweep {
            coin,
            t,
            phi_min,
            phi_max,
            phi_steps,
            alpha_split,
            engine,
            k_samples,
            output,
        } => (
            RunConfig {
                command: CommandKind::Sweep,
                coin: coin.to_angles(),
                init: InitKind::Symmetric,
                t,
                engine,
                k_samples,
                sweep: SweepConfig {
                    phi_min,
                    phi_max,
                    phi_steps,
                    alpha_split,
                },
                suite: SuiteKind::All,
                out: output.out,
                format: output.format,
                skip_zeros: false,
                tolerances: ToleranceConfig::default(),
                perturb: 0.0,
            },
            output.config,
        ),
        Command::Spectrum {
            coin,
            k_samples,
            output,
        } => (
            RunConfig {
                command: CommandKind::Spectrum,
                coin: coin.to_angles(),
                init: InitKind::L,
                t: 0,
                engine: EngineKind::Direct,
                k_samples,
                sweep: default_sweep_config(),
                suite: SuiteKind::All,
                out: output.out,
                format: output.format,
                skip_zeros: false,
                tolerances: ToleranceConfig::default(),
                perturb: 0.0,
            },
            output.config,
        ),
        Command::Verify {
            coin,
            init,
            t,
            suite,
            perturb,
            tol_amplitude,
            tol_probability,
            tol_mean_position,
            tol_derived,
            output,
        } => {
            let mut tolerances = ToleranceConfig::default();
            if let Some(v) = tol_amplitude {
                tolerances.amplitude = v;
            }
            if let Some(v) = tol_probability {
                tolerances.probability = v;
            }
            if let Some(v) = tol_mean_position {
                tolerances.mean_position = v;
            }
            if let Some(v) = tol_derived {
                tolerances.derived = v;
            }
            (
                RunConfig {
                    command: CommandKind::Verify,
                    coin: coin.to_angles(),
                    init,
                    t,
                    engine: EngineKind::Direct,
                    k_samples: 0,
                    sweep: default_sweep_config(),
                    suite,
                    out: output.out,
                    format: FormatKind::Json,
                    skip_zeros: false,
                    tolerances,
                    perturb,
                },
                output.config,
            )
        }
    };

    match config_path {
        None => Ok(config),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read config `{path}`: {e}"))?;
            let patch: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| format!("config `{path}` is not valid JSON: {e}"))?;
            config.overlay(&patch)
        }
    }
}

enum Failure {
    Config(String),
    Io(String),
}

impl From<coinwalk::Error> for Failure {
    fn from(e: coinwalk::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn write_artifact(config: &RunConfig, text: &str) -> Result<(), Failure> {
    match &config.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write `{path}`: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spectral_samples(config: &RunConfig, t: usize) -> usize {
    if config.k_samples == 0 {
        2 * t + 2
    } else {
        config.k_samples
    }
}

fn run_engine(config: &RunConfig) -> Result<(WalkState, Option<f64>), Failure> {
    let params = config.coin.to_params()?;
    let spec = config.init.to_spec()?;
    let t = config.t;
    match config.engine {
        EngineKind::Direct => Ok((evolve(&spec, &params, t)?, None)),
        EngineKind::Spectral => Ok((
            propagate_fourier(&spec, &params, t, spectral_samples(config, t))?,
            None,
        )),
        EngineKind::Both => {
            let direct = evolve(&spec, &params, t)?;
            let spectral = propagate_fourier(&spec, &params, t, spectral_samples(config, t))?;
            let discrepancy = direct.max_amplitude_difference(&spectral);
            Ok((direct, Some(discrepancy)))
        }
    }
}

fn cmd_evolve(config: &RunConfig) -> Result<i32, Failure> {
    let (state, discrepancy) = run_engine(config)?;
    let dist = Distribution::from_state(&state);
    let text = match config.format {
        FormatKind::Csv => output::render_distribution_csv(config, &dist, discrepancy),
        FormatKind::Json => output::render_json(
            config,
            output::distribution_results_json(config, &dist, discrepancy),
        ),
    };
    write_artifact(config, &text)?;
    Ok(0)
}

fn run_sweep_engine(config: &RunConfig, engine: Engine) -> Result<SweepResult, Failure> {
    let phis = phi_grid(
        config.sweep.phi_min.radians(),
        config.sweep.phi_max.radians(),
        config.sweep.phi_steps,
    );
    Ok(sweep_mean_position(
        config.coin.beta.radians(),
        config.t,
        &phis,
        config.sweep.alpha_split.to_split(),
        &engine,
    )?)
}

fn cmd_sweep(config: &RunConfig) -> Result<i32, Failure> {
    if config.sweep.phi_steps < 2 {
        return Err(Failure::Config(
            "sweep needs at least 2 phi samples".to_string(),
        ));
    }
    let spectral = Engine::Spectral {
        samples: (config.k_samples > 0).then_some(config.k_samples),
    };
    let (sweep, discrepancy) = match config.engine {
        EngineKind::Direct => (run_sweep_engine(config, Engine::Direct)?, None),
        EngineKind::Spectral => (run_sweep_engine(config, spectral)?, None),
        EngineKind::Both => {
            let direct = run_sweep_engine(config, Engine::Direct)?;
            let other = run_sweep_engine(config, spectral)?;
            let discrepancy = direct
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| (a.mean_x - b.mean_x).abs())
                .fold(0.0f64, f64::max);
            (direct, Some(discrepancy))
        }
    };
    let text = match config.format {
        FormatKind::Csv => output::render_sweep_csv(config, &sweep, discrepancy),
        FormatKind::Json => output::render_json(
            config,
            output::sweep_results_json(config, &sweep, discrepancy),
        ),
    };
    write_artifact(config, &text)?;
    Ok(0)
}

fn cmd_spectrum(config: &RunConfig) -> Result<i32, Failure> {
    if config.k_samples == 0 {
        return Err(Failure::Config("spectrum needs k_samples >= 1".to_string()));
    }
    let params = config.coin.to_params()?;
    let modes: Vec<SpectralMode> = spectrum_grid(config.k_samples)
        .into_iter()
        .map(|k| eigensystem_or_diagonal(k, &params))
        .collect();
    let text = match config.format {
        FormatKind::Csv => output::render_spectrum_csv(config, &modes),
        FormatKind::Json => {
            output::render_json(config, output::spectrum_results_json(config, &modes))
        }
    };
    write_artifact(config, &text)?;
    Ok(0)
}

fn cmd_verify(config: &RunConfig) -> Result<i32, Failure> {
    // The report is JSON regardless of --format; keep the embedded config
    // consistent with what actually gets written.
    let config = RunConfig {
        format: FormatKind::Json,
        ..config.clone()
    };
    let suite_config = SuiteConfig {
        params: config.coin.to_params()?,
        init: config.init.to_spec()?,
        t: config.t,
    };
    let checker = Checker {
        engine: Engine::Direct,
        tolerances: config.tolerances.to_tolerances(),
        perturb: config.perturb,
    };
    let report: TheoremReport = run_suite(config.suite.to_suite(), &suite_config, &checker)?;
    let text = output::render_json(&config, output::verify_results_json(&report));
    write_artifact(&config, &text)?;
    if report.overall {
        Ok(0)
    } else {
        eprintln!("verification failed: see report");
        Ok(EXIT_VERIFY)
    }
}

fn execute(config: &RunConfig) -> Result<i32, Failure> {
    match config.command {
        CommandKind::Evolve => cmd_evolve(config),
        CommandKind::Sweep => cmd_sweep(config),
        CommandKind::Spectrum => cmd_spectrum(config),
        CommandKind::Verify => cmd_verify(config),
    }
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("WALK_THREADS") {
        if let Ok(n) = value.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn main() {
    init_thread_pool();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_CONFIG,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };

    let config = match build_config(cli.command) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(EXIT_CONFIG);
        }
    };

    match execute(&config) {
        Ok(code) => std::process::exit(code),
        Err(Failure::Config(message)) => {
            eprintln!("error: {message}");
            std::process::exit(EXIT_CONFIG);
        }
        Err(Failure::Io(message)) => {
            eprintln!("error: {message}");
            std::process::exit(EXIT_IO);
        }
    }
}
