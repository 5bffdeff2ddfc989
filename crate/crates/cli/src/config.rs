//! Run configuration: a JSON file merged with command-line flags, flags first.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sgpv::NullSpec;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every key the config file may carry. Unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub null_point: Option<f64>,
    pub delta: Option<f64>,
    pub null_lo: Option<f64>,
    pub null_hi: Option<f64>,
    pub alpha: Option<f64>,
    pub level: Option<f64>,
    pub log10: Option<bool>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub digits: Option<usize>,
    pub welch: Option<bool>,
    pub crosstab: Option<bool>,
    pub n: Option<f64>,
    pub variance: Option<f64>,
    pub odds: Option<f64>,
    pub grid: Option<String>,
    pub theta: Option<f64>,
    pub theta1: Option<f64>,
    pub replicates: Option<u64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Center of a symmetric null, used with --delta.
    #[arg(long, allow_negative_numbers = true)]
    pub null_point: Option<f64>,
    /// Half-width of a symmetric null.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Lower bound of the null, used with --null-hi.
    #[arg(long, allow_negative_numbers = true)]
    pub null_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub null_hi: Option<f64>,
    /// Error rate of the interval estimate (design, reliability, simulate) and
    /// of the significance cut (screen).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Coverage of intervals built from estimates (compute, screen).
    #[arg(long)]
    pub level: Option<f64>,
    /// Interval endpoints are ratios; analyze them on the log10 scale.
    #[arg(long)]
    pub log10: bool,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Significant digits for floating-point output.
    #[arg(long)]
    pub digits: Option<usize>,
}

/// The null as given: a center with half-width, or explicit bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NullForm {
    Symmetric { point: f64, delta: f64 },
    Bounds { lo: f64, hi: f64 },
}

impl NullForm {
    /// `(θ0, δ)` for the design-side commands, where `δ = 0` is allowed.
    pub fn center_and_delta(self) -> (f64, f64) {
        match self {
            NullForm::Symmetric { point, delta } => (point, delta),
            NullForm::Bounds { lo, hi } => (0.5 * (lo + hi), 0.5 * (hi - lo)),
        }
    }

    pub fn to_spec(self) -> Result<NullSpec, CliError> {
        let spec = match self {
            NullForm::Symmetric { point, delta } => NullSpec::symmetric(point, delta),
            NullForm::Bounds { lo, hi } => NullSpec::from_bounds(lo, hi),
        };
        spec.map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub null: NullForm,
    pub alpha: f64,
    pub level: f64,
    pub log10: bool,
    pub format: Format,
    pub seed: u64,
    pub digits: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs, file: &FileConfig) -> Result<RunConfig, CliError> {
        let point = args.null_point.or(file.null_point);
        let delta = args.delta.or(file.delta);
        let lo = args.null_lo.or(file.null_lo);
        let hi = args.null_hi.or(file.null_hi);
        let symmetric = point.is_some() || delta.is_some();
        let bounds = lo.is_some() || hi.is_some();
        let null = match (symmetric, bounds) {
            (true, true) => {
                return Err(CliError::Config(
                    "give the null either as --null-point/--delta or as --null-lo/--null-hi, not both".into(),
                ))
            }
            (false, false) => {
                return Err(CliError::Config("a null is required: --null-point/--delta or --null-lo/--null-hi".into()))
            }
            (true, false) => match (point, delta) {
                (Some(point), Some(delta)) => NullForm::Symmetric { point, delta },
                _ => return Err(CliError::Config("--null-point and --delta must be given together".into())),
            },
            (false, true) => match (lo, hi) {
                (Some(lo), Some(hi)) => NullForm::Bounds { lo, hi },
                _ => return Err(CliError::Config("--null-lo and --null-hi must be given together".into())),
            },
        };

        let alpha = args.alpha.or(file.alpha).unwrap_or(0.05);
        let level = args.level.or(file.level).unwrap_or(0.95);
        for (name, v) in [("alpha", alpha), ("level", level)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        let digits = args.digits.or(file.digits).unwrap_or(6);
        if !(1..=17).contains(&digits) {
            return Err(CliError::Config(format!("digits must be between 1 and 17, got {digits}")));
        }
        Ok(RunConfig {
            null,
            alpha,
            level,
            log10: args.log10 || file.log10.unwrap_or(false),
            format: args.format.or(file.format).unwrap_or_default(),
            seed: args.seed.or(file.seed).unwrap_or(0),
            digits,
            out: args.out.clone(),
        })
    }
}

/// Parse a grid: `start:stop:step`, a comma list, or a single value.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Config(format!("malformed grid '{spec}': {why}"));
    let num = |s: &str| s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad("not a finite number"));
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(bad("empty"));
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(bad("expected start:stop:step"));
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if !(step > 0.0) {
            return Err(bad("step must be positive"));
        }
        if stop < start {
            return Err(bad("stop is below start"));
        }
        let count = ((stop - start) / step + 1e-9).floor() + 1.0;
        if count > 10_000_000.0 {
            return Err(bad("more than 10^7 points"));
        }
        return Ok((0..count as usize).map(|k| start + k as f64 * step).collect());
    }
    spec.split(',').map(num).collect()
}
