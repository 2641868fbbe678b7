//! Scenario assembly from flags and `key = value` files.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::report::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Outward,
    Inward,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Outward => "outward",
            Direction::Inward => "inward",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Squared sound speed in p = A rho
    #[arg(long = "A")]
    pub a: Option<f64>,
    /// Inner radius
    #[arg(long)]
    pub r0: Option<f64>,
    /// Outer radius
    #[arg(long)]
    pub r1: Option<f64>,
    /// Density on the inflow circle
    #[arg(long)]
    pub rho: Option<f64>,
    /// Radial velocity on the inflow circle (negative for inward flow)
    #[arg(long, allow_hyphen_values = true)]
    pub u1: Option<f64>,
    /// Angular velocity on the inflow circle
    #[arg(long, allow_hyphen_values = true)]
    pub u2: Option<f64>,
    /// Flow direction; inferred from the sign of u1 when omitted
    #[arg(long, value_enum)]
    pub direction: Option<Direction>,
    /// Relative tolerance for sonic and threshold comparisons
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Scenario file with `key = value` lines; flags take precedence
    #[arg(long)]
    pub scenario: Option<PathBuf>,
}

/// Optional command-specific values, from flags or the scenario file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Extras {
    pub pex: Option<f64>,
    pub rb: Option<f64>,
    pub w0: Option<f64>,
    pub sigma1: Option<f64>,
    pub n: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub a: f64,
    pub direction: Direction,
    pub r0: f64,
    pub r1: f64,
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub extras: Extras,
}

impl Scenario {
    /// Radius of the circle carrying the boundary data.
    pub fn inflow_radius(&self) -> f64 {
        match self.direction {
            Direction::Outward => self.r0,
            Direction::Inward => self.r1,
        }
    }
}

const KEYS: &[&str] = &["A", "direction", "r0", "r1", "rho", "u1", "u2", "tol", "format", "out", "pex", "rb", "w0", "sigma1", "n"];

/// Parses `key = value` lines. `#` starts a comment.
pub fn parse_scenario_text(text: &str) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", no + 1))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(format!("line {}: unknown key `{key}`", no + 1));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

struct Source {
    file: HashMap<String, String>,
}

impl Source {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let file = match path {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
                parse_scenario_text(&text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?
            }
            None => HashMap::new(),
        };
        Ok(Self { file })
    }

    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::input(format!("scenario value `{v}` for `{key}` is not valid"))),
            None => Ok(None),
        }
    }

    fn need<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.pick(flag, key)?
            .ok_or_else(|| CliError::input(format!("missing required value --{key}")))
    }
}

pub fn resolve(common: &CommonArgs, extras: Extras) -> Result<Scenario, CliError> {
    let src = Source::load(common.scenario.as_deref())?;
    let a = src.pick(common.a, "A")?.unwrap_or(1.0);
    let r0: f64 = src.need(common.r0, "r0")?;
    let r1: f64 = src.need(common.r1, "r1")?;
    let rho: f64 = src.need(common.rho, "rho")?;
    let u1: f64 = src.need(common.u1, "u1")?;
    let u2: f64 = src.need(common.u2, "u2")?;
    let tol = src.pick(common.tol, "tol")?.unwrap_or(1e-9);
    let format = src.pick(common.format, "format")?.unwrap_or_default();
    let out = src.pick(common.out.clone(), "out")?;
    let inferred = if u1 < 0.0 { Direction::Inward } else { Direction::Outward };
    let direction = src.pick(common.direction, "direction")?.unwrap_or(inferred);

    if !(r0 > 0.0 && r1 > r0) {
        return Err(CliError::input(format!("need 0 < r0 < r1, got r0 = {r0}, r1 = {r1}")));
    }
    if u1 == 0.0 || direction != inferred {
        return Err(CliError::input(format!("direction {direction} is inconsistent with u1 = {u1}")));
    }
    if !(tol > 0.0) {
        return Err(CliError::input(format!("tol must be positive, got {tol}")));
    }
    let extras = Extras {
        pex: src.pick(extras.pex, "pex")?,
        rb: src.pick(extras.rb, "rb")?,
        w0: src.pick(extras.w0, "w0")?,
        sigma1: src.pick(extras.sigma1, "sigma1")?,
        n: src.pick(extras.n, "n")?,
    };
    Ok(Scenario { a, direction, r0, r1, rho, u1, u2, tol, format, out, extras })
}
