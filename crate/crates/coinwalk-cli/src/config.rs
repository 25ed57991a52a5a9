//! Run configuration: the one struct every subcommand reads, mirrored
//! one-to-one by the JSON accepted through `--config`.
//!
//! Angles carry both the literal the user typed ("pi/6", "3*pi/4", "-0.25")
//! and the parsed radian value, so output metadata can echo the exact input
//! alongside the number it became.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use coinwalk::{AlphaSplit, CoinParams, Complex64, InitialSpec, Suite, Tolerances};

/// An angle as entered: a literal plus its radian value.
///
/// Accepted forms: plain decimals ("0.75", "-1e-3") and π expressions
/// ("pi", "-pi", "pi/6", "3*pi/4", "2pi/3").
#[derive(Debug, Clone)]
pub struct Angle {
    literal: String,
    radians: f64,
}

impl Angle {
    pub fn from_radians(radians: f64) -> Self {
        Self {
            literal: format_float(radians),
            radians,
        }
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn literal(&self) -> &str {
        &self.literal
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.literal == other.literal && self.radians == other.radians
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let radians = parse_angle(s)?;
        Ok(Self {
            literal: s.trim().to_string(),
            radians,
        })
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.literal)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Literal(String),
            Number(f64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Literal(s) => s.parse().map_err(D::Error::custom),
            Repr::Number(radians) => Ok(Angle::from_radians(radians)),
        }
    }
}

/// Parse an angle literal into radians.
fn parse_angle(input: &str) -> Result<f64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty angle".to_string());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim_start()),
        None => (1.0, s.strip_prefix('+').unwrap_or(s).trim_start()),
    };

    let value = if let Some(pi_pos) = body.find("pi") {
        let (coef_str, rest) = body.split_at(pi_pos);
        let denom_str = &rest[2..];
        let coef = match coef_str.trim().trim_end_matches('*').trim() {
            "" => 1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| format!("bad coefficient in angle `{input}`"))?,
        };
        let denom = match denom_str.trim() {
            "" => 1.0,
            d => {
                let d = d
                    .strip_prefix('/')
                    .ok_or_else(|| format!("expected `/` after pi in angle `{input}`"))?;
                let d: f64 = d
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad divisor in angle `{input}`"))?;
                if d == 0.0 {
                    return Err(format!("zero divisor in angle `{input}`"));
                }
                d
            }
        };
        coef * std::f64::consts::PI / denom
    } else {
        body.parse::<f64>()
            .map_err(|_| format!("cannot parse angle `{input}`"))?
    };

    let radians = sign * value;
    if !radians.is_finite() {
        return Err(format!("angle `{input}` is not finite"));
    }
    Ok(radians)
}

/// Shortest round-trip decimal, the one float format used everywhere.
pub fn format_float(v: f64) -> String {
    format!("{v}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Evolve,
    Sweep,
    Spectrum,
    Verify,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Evolve => "evolve",
            Self::Sweep => "sweep",
            Self::Spectrum => "spectrum",
            Self::Verify => "verify",
        };
        write!(f, "{s}")
    }
}

/// The four coin angles, as entered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoinAngles {
    pub alpha: Angle,
    pub beta: Angle,
    pub gamma: Angle,
    pub theta: Angle,
}

impl CoinAngles {
    pub fn to_params(&self) -> coinwalk::Result<CoinParams> {
        CoinParams::new(
            self.alpha.radians(),
            self.beta.radians(),
            self.gamma.radians(),
            self.theta.radians(),
        )
    }
}

/// Initial state selector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    L,
    R,
    Symmetric,
    /// Complex coefficients as [re, im] pairs; must be normalized.
    Custom {
        m: [f64; 2],
        n: [f64; 2],
    },
}

impl InitKind {
    pub fn to_spec(&self) -> coinwalk::Result<InitialSpec> {
        match self {
            Self::L => Ok(InitialSpec::PureL),
            Self::R => Ok(InitialSpec::PureR),
            Self::Symmetric => Ok(InitialSpec::Symmetric),
            Self::Custom { m, n } => {
                InitialSpec::custom(Complex64::new(m[0], m[1]), Complex64::new(n[0], n[1]))
            }
        }
    }
}

impl FromStr for InitKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l" => Ok(Self::L),
            "r" => Ok(Self::R),
            "symmetric" | "s" => Ok(Self::Symmetric),
            other => Err(format!(
                "unknown initial state `{other}` (expected L, R, or symmetric; custom states go through --config)"
            )),
        }
    }
}

impl fmt::Display for InitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::L => write!(f, "L"),
            Self::R => write!(f, "R"),
            Self::Symmetric => write!(f, "symmetric"),
            Self::Custom { m, n } => write!(
                f,
                "custom(m={}+{}i, n={}+{}i)",
                format_float(m[0]),
                format_float(m[1]),
                format_float(n[0]),
                format_float(n[1])
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EngineKind {
    Direct,
    Spectral,
    /// Run both engines; report the direct result plus their worst
    /// amplitude discrepancy.
    Both,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Direct => "direct",
            Self::Spectral => "spectral",
            Self::Both => "both",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    Zero,
    Half,
    Full,
}

impl SplitKind {
    pub fn to_split(self) -> AlphaSplit {
        match self {
            Self::Zero => AlphaSplit::Zero,
            Self::Half => AlphaSplit::Half,
            Self::Full => AlphaSplit::Full,
        }
    }
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Zero => "zero",
            Self::Half => "half",
            Self::Full => "full",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    All,
    Lemma1,
    Thm1,
    Thm2,
    Cor2,
    Thm3,
    Thm4,
}

impl SuiteKind {
    pub fn to_suite(self) -> Suite {
        match self {
            Self::All => Suite::All,
            Self::Lemma1 => Suite::Lemma1,
            Self::Thm1 => Suite::Theorem1,
            Self::Thm2 => Suite::Theorem2,
            Self::Cor2 => Suite::Corollary2,
            Self::Thm3 => Suite::Theorem3,
            Self::Thm4 => Suite::Theorem4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FormatKind {
    Csv,
    Json,
}

/// φ-grid parameters for `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub phi_min: Angle,
    pub phi_max: Angle,
    pub phi_steps: usize,
    pub alpha_split: SplitKind,
}

/// Violation budgets; mirrors [`Tolerances`] so JSON configs can override
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub amplitude: f64,
    pub probability: f64,
    pub mean_position: f64,
    pub derived: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        Self {
            amplitude: t.amplitude,
            probability: t.probability,
            mean_position: t.mean_position,
            derived: t.derived,
        }
    }
}

impl ToleranceConfig {
    pub fn to_tolerances(self) -> Tolerances {
        Tolerances {
            amplitude: self.amplitude,
            probability: self.probability,
            mean_position: self.mean_position,
            derived: self.derived,
        }
    }
}

/// Everything one invocation does, in one serializable value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub coin: CoinAngles,
    pub init: InitKind,
    pub t: usize,
    pub engine: EngineKind,
    /// Momentum sample count: spectral-engine grid size (0 = smallest
    /// exact grid) and the row count of `spectrum`.
    pub k_samples: usize,
    pub sweep: SweepConfig,
    pub suite: SuiteKind,
    pub out: Option<String>,
    pub format: FormatKind,
    /// Keep rows whose probability is exactly zero (parity sites).
    pub skip_zeros: bool,
    pub tolerances: ToleranceConfig,
    /// Negative-control amplitude fault injected into `verify` runs.
    pub perturb: f64,
}

impl RunConfig {
    /// The canonical JSON form; identical configs serialize identically.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Overlay `patch` (a possibly partial JSON object) on top of `self`.
    pub fn overlay(&self, patch: &serde_json::Value) -> Result<RunConfig, String> {
        let mut base = serde_json::to_value(self).expect("config serializes");
        merge_json(&mut base, patch);
        serde_json::from_value(base).map_err(|e| format!("invalid config: {e}"))
    }
}

fn merge_json(base: &mut serde_json::Value, patch: &serde_json::Value) {
    match (base, patch) {
        (serde_json::Value::Object(base_map), serde_json::Value::Object(patch_map)) => {
            for (key, value) in patch_map {
                match base_map.get_mut(key) {
                    Some(slot) if slot.is_object() && value.is_object() => {
                        merge_json(slot, value);
                    }
                    Some(slot) => *slot = value.clone(),
                    None => {
                        base_map.insert(key.clone(), value.clone());
                    }
                }
            }
        }
        (base, patch) => *base = patch.clone(),
    }
}
