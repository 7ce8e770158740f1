//! Run configuration: command-line flags, optionally seeded from a
//! `key=value` file whose keys are the long flag names.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::paradox::Truth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Minimum sample sizes for strong contrast
    Table1,
    /// Posterior curves in n (panel A) or prior scale (panel B)
    Figure1,
    /// Point-null versus interval-null verdicts for one scenario
    Analyze,
    /// The |z| band where the z test rejects but the posterior favours H0
    Zone,
    /// Monte Carlo conflict frequency
    Simulate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table1 => "table1",
            Command::Figure1 => "figure1",
            Command::Analyze => "analyze",
            Command::Zone => "zone",
            Command::Simulate => "simulate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Panel {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TruthArg {
    NullTrue,
    Mixture,
}

impl From<TruthArg> for Truth {
    fn from(t: TruthArg) -> Self {
        match t {
            TruthArg::NullTrue => Truth::NullTrue,
            TruthArg::Mixture => Truth::Mixture,
        }
    }
}

/// Log-spaced grid `LO:HI:PER_DECADE`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub per_decade: u32,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, per] = parts.as_slice() else {
            return Err(format!("grid `{s}` is not of the form LO:HI:PER_DECADE"));
        };
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad grid start `{lo}`"))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad grid end `{hi}`"))?;
        let per_decade: u32 = per
            .trim()
            .parse()
            .map_err(|_| format!("bad points-per-decade `{per}`"))?;
        if !(lo > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) || per_decade == 0 {
            return Err(format!("grid `{s}` needs 0 < LO <= HI and PER_DECADE >= 1"));
        }
        Ok(GridSpec { lo, hi, per_decade })
    }
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a nonnegative integer"))
    }
}

/// Comma-separated significance levels.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaList(pub Vec<f64>);

impl std::str::FromStr for AlphaList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| format!("`{t}` is not a number"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(AlphaList)
    }
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "jlparadox",
    version,
    about = "Point-null and interval-null Bayes factors, strong-contrast sample sizes and equivalence tests",
    args_override_self = true
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Significance level; a comma-separated list for table1
    #[arg(long)]
    pub alpha: Option<AlphaList>,
    /// Sample size (integer; 1e6 notation accepted)
    #[arg(long, value_parser = parse_count)]
    pub n: Option<u64>,
    /// Standardized statistic (x̄ − θ0)√n/σ
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Sample mean; alternative to --z (both must agree if given)
    #[arg(long, allow_hyphen_values = true)]
    pub mean: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    /// Prior mass on the point null
    #[arg(long)]
    pub c: Option<f64>,
    /// Conjugate slab scale σ0/σ
    #[arg(long)]
    pub tau: Option<f64>,
    /// Width of a uniform slab (replaces the conjugate slab)
    #[arg(long)]
    pub interval_width: Option<f64>,
    /// Equivalence half-width δ
    #[arg(long)]
    pub delta: Option<f64>,
    /// Truncation of the H1 region at θ0 ± outer bound
    #[arg(long)]
    pub outer_bound: Option<f64>,
    /// Posterior threshold for zone
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, value_enum, ignore_case = true)]
    pub panel: Option<Panel>,
    /// Log-spaced grid LO:HI:PER_DECADE for figure1
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[arg(long, value_enum)]
    pub truth: Option<TruthArg>,
    #[arg(long, value_parser = parse_count)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = parse_count)]
    pub reps: Option<u64>,
    /// Worker threads for simulate (results do not depend on it)
    #[arg(long, value_parser = parse_count)]
    pub workers: Option<u64>,
    /// Use z rounded to two decimals when z is derived from alpha
    #[arg(long)]
    pub quote_z: bool,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file supplying defaults for any flag
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug)]
pub enum ConfigError {
    /// `--help` or `--version`; the text goes to standard output.
    Display(String),
    Usage(String),
}

/// Turns `key=value` lines into flag arguments. Blank lines and `#` comments
/// are skipped; boolean flags take `true`/`false`.
pub fn config_file_args(text: &str) -> Result<Vec<String>, String> {
    let mut args = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key=value", lineno + 1));
        };
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        match key {
            "command" | "config" => {
                return Err(format!(
                    "config line {}: `{key}` cannot be set from a file",
                    lineno + 1
                ))
            }
            "quote-z" => match value {
                "true" => args.push("--quote-z".to_string()),
                "false" => {}
                other => {
                    return Err(format!(
                        "config line {}: quote-z expects true or false, got `{other}`",
                        lineno + 1
                    ))
                }
            },
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

impl RunConfig {
    /// Parses `args` (including the program name). A `--config FILE` is read
    /// first and its entries are placed ahead of the command-line flags, so
    /// the command line wins.
    pub fn parse_args<I, S>(args: I) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let args: Vec<String> = args.into_iter().map(Into::into).collect();
        let first = Self::try_parse_from(&args).map_err(clap_error)?;
        let Some(path) = &first.config else {
            return Ok(first);
        };
        let text = std::fs::read_to_string(path).map_err(|e| {
            ConfigError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        let from_file = config_file_args(&text).map_err(ConfigError::Usage)?;
        let mut merged = Vec::with_capacity(args.len() + from_file.len() + 1);
        merged.push(args.first().cloned().unwrap_or_else(|| "jlparadox".into()));
        merged.push(first.command.name().to_string());
        merged.extend(from_file);
        // everything after the program name except the positional command
        let mut skipped_command = false;
        for a in args.iter().skip(1) {
            if !skipped_command && a == first.command.name() {
                skipped_command = true;
                continue;
            }
            merged.push(a.clone());
        }
        Self::try_parse_from(&merged).map_err(clap_error)
    }

    pub fn single_alpha(&self) -> Result<Option<f64>, String> {
        match self.alpha.as_ref().map(|a| a.0.as_slice()) {
            None => Ok(None),
            Some([a]) => Ok(Some(*a)),
            Some(other) => Err(format!(
                "--alpha takes a single value for {}; got {} values",
                self.command.name(),
                other.len()
            )),
        }
    }
}

fn clap_error(e: clap::Error) -> ConfigError {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ConfigError::Display(e.to_string()),
        _ => ConfigError::Usage(e.to_string()),
    }
}
