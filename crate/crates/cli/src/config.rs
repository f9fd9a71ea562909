use std::f64::consts::PI;
use std::path::PathBuf;

use selfrep_core::{Error, Result};

pub const USAGE: &str = "\
selfrep - no-go verification runner for quantum self-replication

USAGE:
  selfrep [OPTIONS]

MODES (--mode):
  single   verify one parameter point (default)
  grid     sweep a parameter grid
  demo     drive the explicit basis-state copier

POINT PARAMETERS (single mode; also defaults for demo's blank count):
  --a F          first data state a|0> + sqrt(1-a^2)|1>, 0 < a <= 1   [0.6]
  --c F          second data state c|0> + sqrt(1-c^2) e^{i theta}|1>,
                 0 < c <= 1; c = 1 selects the orthogonal complement
                 of the first state                                   [0.6]
  --theta F      relative phase, 0 < theta < pi                       [pi/2]
  --q-mag F      program overlap magnitude in [0, 1] (alias: --q)     [0.5]
  --q-phase F    program overlap phase in radians                     [0]
  --r-mag F      control overlap magnitude in [0, 1] (alias: --r)     [0.5]
  --r-phase F    control overlap phase in radians                     [0]
  --m N          auxiliary blanks per machine                         [1]
  --n N          total blanks; n >= 2(m+1)                            [4]

GRID MODE:
  --grid NAME|PATH   preset name (default, smoke) or a JSON file with
                     axis overrides {\"a\": [...], \"theta\": [...], ...}

OUTPUT:
  --format json|csv  report format                                    [json]
  --out PATH         write the report to PATH (atomic); stdout if absent
  --seed N           seed for the per-point superposition draws       [0]
  --tol F            oracle-agreement tolerance, > 0                  [1e-10]

EXIT CODES:
  0  all verifications passed       1  an assertion failed
  2  usage error                    3  resource limit hit";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Single,
    Grid,
    Demo,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Single => "single",
            Mode::Grid => "grid",
            Mode::Demo => "demo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridSource {
    Preset(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub a: f64,
    pub c: f64,
    pub theta: f64,
    pub q_mag: f64,
    pub q_phase: f64,
    pub r_mag: f64,
    pub r_phase: f64,
    pub aux_blanks: usize,
    pub total_blanks: usize,
    pub grid: Option<GridSource>,
    pub format: ReportFormat,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Single,
            a: 0.6,
            c: 0.6,
            theta: PI / 2.0,
            q_mag: 0.5,
            q_phase: 0.0,
            r_mag: 0.5,
            r_phase: 0.0,
            aux_blanks: 1,
            total_blanks: 4,
            grid: None,
            format: ReportFormat::Json,
            out: None,
            seed: 0,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Config(RunConfig),
    Help,
}

fn parse_f64(flag: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::usage(format!("{flag} expects a number, got '{value}'")))
}

fn parse_usize(flag: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::usage(format!("{flag} expects a non-negative integer, got '{value}'")))
}

pub fn parse_args(args: &[String]) -> Result<Parsed> {
    let mut config = RunConfig::default();
    let mut iter = args.iter();
    while let Some(flag) = iter.next() {
        if flag == "--help" || flag == "-h" {
            return Ok(Parsed::Help);
        }
        let mut value = || {
            iter.next()
                .ok_or_else(|| Error::usage(format!("{flag} requires a value")))
        };
        match flag.as_str() {
            "--mode" => {
                config.mode = match value()?.as_str() {
                    "single" => Mode::Single,
                    "grid" => Mode::Grid,
                    "demo" => Mode::Demo,
                    other => {
                        return Err(Error::usage(format!(
                            "--mode must be one of single|grid|demo, got '{other}'"
                        )))
                    }
                };
            }
            "--a" => config.a = parse_f64(flag, value()?)?,
            "--c" => config.c = parse_f64(flag, value()?)?,
            "--theta" => config.theta = parse_f64(flag, value()?)?,
            "--q-mag" | "--q" => config.q_mag = parse_f64(flag, value()?)?,
            "--q-phase" => config.q_phase = parse_f64(flag, value()?)?,
            "--r-mag" | "--r" => config.r_mag = parse_f64(flag, value()?)?,
            "--r-phase" => config.r_phase = parse_f64(flag, value()?)?,
            "--m" => config.aux_blanks = parse_usize(flag, value()?)?,
            "--n" => config.total_blanks = parse_usize(flag, value()?)?,
            "--grid" => {
                let v = value()?;
                let path = PathBuf::from(v);
                config.grid = Some(if path.exists() || v.ends_with(".json") {
                    GridSource::File(path)
                } else {
                    GridSource::Preset(v.clone())
                });
            }
            "--format" => {
                config.format = match value()?.as_str() {
                    "json" => ReportFormat::Json,
                    "csv" => ReportFormat::Csv,
                    other => {
                        return Err(Error::usage(format!(
                            "--format must be json or csv, got '{other}'"
                        )))
                    }
                };
            }
            "--out" => config.out = Some(PathBuf::from(value()?)),
            "--seed" => {
                let v = value()?;
                config.seed = v
                    .parse::<u64>()
                    .map_err(|_| Error::usage(format!("--seed expects an integer, got '{v}'")))?;
            }
            "--tol" => config.tol = parse_f64(flag, value()?)?,
            other => return Err(Error::usage(format!("unknown flag '{other}'"))),
        }
    }
    validate(&config)?;
    Ok(Parsed::Config(config))
}

fn validate(config: &RunConfig) -> Result<()> {
    for (flag, v) in [("--a", config.a), ("--c", config.c)] {
        if !v.is_finite() || v <= 0.0 || v > 1.0 {
            return Err(Error::usage(format!("{flag} must lie in (0, 1], got {v}")));
        }
    }
    if !config.theta.is_finite() || config.theta <= 0.0 || config.theta >= PI {
        return Err(Error::usage(format!(
            "--theta must satisfy 0 < theta < pi, got {}",
            config.theta
        )));
    }
    for (flag, v) in [("--q-mag", config.q_mag), ("--r-mag", config.r_mag)] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(Error::usage(format!("{flag} must lie in [0, 1], got {v}")));
        }
    }
    for (flag, v) in [("--q-phase", config.q_phase), ("--r-phase", config.r_phase)] {
        if !v.is_finite() {
            return Err(Error::usage(format!("{flag} must be finite, got {v}")));
        }
    }
    let need = 2 * (config.aux_blanks + 1);
    if config.total_blanks < need {
        return Err(Error::usage(format!(
            "--n must satisfy n >= 2(m+1) = {need}, got {}",
            config.total_blanks
        )));
    }
    if !config.tol.is_finite() || config.tol <= 0.0 {
        return Err(Error::usage(format!(
            "--tol must be a positive number, got {}",
            config.tol
        )));
    }
    if config.grid.is_some() && config.mode != Mode::Grid {
        return Err(Error::usage("--grid requires --mode grid"));
    }
    Ok(())
}
