//! Run reports, CSV tables and exit codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use radflow::radial::ProfileRow;
use radflow::Error;
use serde::Serialize;

use crate::scenario::{Direction, Format, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_PRESSURE_WINDOW: i32 = 3;
pub const EXIT_FORBIDDEN_W0: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::DegenerateData(_) => EXIT_INPUT,
            Error::PressureOutOfWindow { .. } => EXIT_PRESSURE_WINDOW,
            Error::W0Forbidden { .. } => EXIT_FORBIDDEN_W0,
            _ => EXIT_NO_SOLUTION,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioEcho {
    #[serde(rename = "A")]
    pub a: f64,
    pub direction: Direction,
    pub r0: f64,
    pub r1: f64,
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
    pub tol: f64,
}

impl From<&Scenario> for ScenarioEcho {
    fn from(s: &Scenario) -> Self {
        Self { a: s.a, direction: s.direction, r0: s.r0, r1: s.r1, rho: s.rho, u1: s.u1, u2: s.u2, tol: s.tol }
    }
}

/// A radius with a flag for whether it lies in `[r0, r1]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Radius {
    pub value: f64,
    pub external: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Status {
    pub code: i32,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: ScenarioEcho,
    pub pattern: BTreeMap<&'static str, String>,
    pub radii: BTreeMap<&'static str, Radius>,
    pub window: BTreeMap<&'static str, f64>,
    pub residuals: BTreeMap<&'static str, f64>,
    pub status: Status,
    #[serde(skip)]
    bounds: (f64, f64),
}

impl RunReport {
    pub fn new(s: &Scenario) -> Self {
        Self {
            scenario: s.into(),
            pattern: BTreeMap::new(),
            radii: BTreeMap::new(),
            window: BTreeMap::new(),
            residuals: BTreeMap::new(),
            status: Status { code: EXIT_OK, message: "ok".into() },
            bounds: (s.r0, s.r1),
        }
    }

    pub fn tag(&mut self, key: &'static str, value: impl ToString) {
        self.pattern.insert(key, value.to_string());
    }

    pub fn radius(&mut self, key: &'static str, value: f64) {
        let (lo, hi) = self.bounds;
        let external = !(value >= lo * (1.0 - 1e-12) && value <= hi * (1.0 + 1e-12));
        self.radii.insert(key, Radius { value, external });
    }

    pub fn fail(&mut self, code: i32, message: impl Into<String>) {
        self.status = Status { code, message: message.into() };
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.to_csv(),
        }
    }

    /// `key,value` lines, keys prefixed by their section.
    fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        let e = &self.scenario;
        for (k, v) in [("A", e.a), ("r0", e.r0), ("r1", e.r1), ("rho", e.rho), ("u1", e.u1), ("u2", e.u2), ("tol", e.tol)] {
            let _ = writeln!(out, "scenario.{k},{}", num(v));
        }
        let _ = writeln!(out, "scenario.direction,{}", e.direction);
        for (k, v) in &self.pattern {
            let _ = writeln!(out, "pattern.{k},{v}");
        }
        for (k, v) in &self.radii {
            let _ = writeln!(out, "radii.{k},{}", num(v.value));
            if v.external {
                let _ = writeln!(out, "radii.{k}.external,true");
            }
        }
        for (k, v) in &self.window {
            let _ = writeln!(out, "window.{k},{}", num(*v));
        }
        for (k, v) in &self.residuals {
            let _ = writeln!(out, "residuals.{k},{}", num(*v));
        }
        let _ = writeln!(out, "status.code,{}", self.status.code);
        let _ = writeln!(out, "status.message,\"{}\"", self.status.message.replace('"', "\"\""));
        out
    }
}

/// Shortest round-trip scientific notation.
pub fn num(v: f64) -> String {
    format!("{v:e}")
}

pub const PROFILE_HEADER: &str = "r,rho,u1,u2,p,M1sq,Msq,B";

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(PROFILE_HEADER);
    out.push('\n');
    for row in rows {
        let s = &row.state;
        let fields = [s.r, s.rho, s.u1, s.u2, s.p, s.m1sq, s.msq, s.bern];
        let line: Vec<String> = fields.iter().map(|v| num(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
