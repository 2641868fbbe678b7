//! Flow-pattern classification from one-sided boundary data.

use std::fmt;

use serde::Serialize;

use super::{limiting_radius, solve_density, sonic_radius, Branch};
use crate::error::{require, Error, Result};
use crate::gas::{invariants_from_boundary, BoundaryState, FlowState, GasModel};

/// Numerical policy for the measure-zero equality cases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyOptions {
    /// Relative tolerance for `r1 = r_sonic`, `r0 = r_sonic`, `r0 = r_limit` and for
    /// sonic boundary data.
    pub rtol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { rtol: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum OutwardPattern {
    Supersonic,
    Subsonic,
    /// Smooth passage through the sonic circle `r_sonic` inside the annulus.
    TransonicAccelerating { r_sonic: f64 },
    /// Supersonic throughout, sonic exactly at the exit.
    SupersonicThenSonicAtExit { r_sonic: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum InwardPattern {
    Supersonic,
    Subsonic,
    TransonicDecelerating { r_sonic: f64 },
    SubsonicSonicAtInner { r_sonic: f64 },
    /// The inner circle lies inside the limiting circle `r_limit`.
    NoGlobalSolution { r_limit: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "direction", content = "pattern")]
pub enum FlowPattern {
    Outward(OutwardPattern),
    Inward(InwardPattern),
}

impl FlowPattern {
    pub fn name(&self) -> &'static str {
        match self {
            FlowPattern::Outward(p) => match p {
                OutwardPattern::Supersonic => "Supersonic",
                OutwardPattern::Subsonic => "Subsonic",
                OutwardPattern::TransonicAccelerating { .. } => "TransonicAccelerating",
                OutwardPattern::SupersonicThenSonicAtExit { .. } => "SupersonicThenSonicAtExit",
            },
            FlowPattern::Inward(p) => match p {
                InwardPattern::Supersonic => "Supersonic",
                InwardPattern::Subsonic => "Subsonic",
                InwardPattern::TransonicDecelerating { .. } => "TransonicDecelerating",
                InwardPattern::SubsonicSonicAtInner { .. } => "SubsonicSonicAtInner",
                InwardPattern::NoGlobalSolution { .. } => "NoGlobalSolution",
            },
        }
    }

    /// Sonic radius carried by the pattern, if any.
    pub fn sonic_radius(&self) -> Option<f64> {
        match *self {
            FlowPattern::Outward(OutwardPattern::TransonicAccelerating { r_sonic })
            | FlowPattern::Outward(OutwardPattern::SupersonicThenSonicAtExit { r_sonic })
            | FlowPattern::Inward(InwardPattern::TransonicDecelerating { r_sonic })
            | FlowPattern::Inward(InwardPattern::SubsonicSonicAtInner { r_sonic }) => Some(r_sonic),
            _ => None,
        }
    }

    pub fn limiting_radius(&self) -> Option<f64> {
        match *self {
            FlowPattern::Inward(InwardPattern::NoGlobalSolution { r_limit }) => Some(r_limit),
            _ => None,
        }
    }

    pub fn has_global_solution(&self) -> bool {
        self.limiting_radius().is_none()
    }
}

impl fmt::Display for FlowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(r_sonic) = self.sonic_radius() {
            write!(f, " r_sonic={r_sonic}")?;
        }
        if let Some(r) = self.limiting_radius() {
            write!(f, " r_limit={r}")?;
        }
        Ok(())
    }
}

fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}

fn reject_sonic_data(state: &FlowState, rtol: f64) -> Result<()> {
    if (state.m1sq - 1.0).abs() <= rtol {
        return Err(Error::DegenerateData(format!("radial Mach number squared {} is sonic", state.m1sq)));
    }
    if (state.msq - 1.0).abs() <= rtol {
        return Err(Error::DegenerateData(format!("total Mach number squared {} is sonic", state.msq)));
    }
    Ok(())
}

/// Pattern of the flow entering at the inner circle `b.r` and leaving at `r1`.
pub fn classify_outward(gas: &GasModel, b: &BoundaryState, r1: f64, opts: ClassifyOptions) -> Result<FlowPattern> {
    b.validate()?;
    require(b.u1 > 0.0, || format!("outward flow needs u1 > 0, got {}", b.u1))?;
    require(r1 > b.r, || format!("exit radius {r1} must exceed the inlet radius {}", b.r))?;
    let state = FlowState::from_primitive(gas, b.r, b.rho, b.u1, b.u2);
    reject_sonic_data(&state, opts.rtol)?;

    let pattern = if state.m1sq > 1.0 {
        OutwardPattern::Supersonic
    } else if state.msq < 1.0 {
        OutwardPattern::Subsonic
    } else {
        let inv = invariants_from_boundary(gas, b)?;
        let r_sonic = sonic_radius(gas, &inv);
        if close(r1, r_sonic, opts.rtol) {
            OutwardPattern::SupersonicThenSonicAtExit { r_sonic }
        } else if r1 > r_sonic {
            OutwardPattern::TransonicAccelerating { r_sonic }
        } else {
            OutwardPattern::Supersonic
        }
    };
    Ok(FlowPattern::Outward(pattern))
}

/// Pattern of the flow entering at the outer circle `b.r` and leaving at `r0`.
///
/// Root existence is confirmed at the inner circle even for supersonic data;
/// a failure there is reported as an error rather than assumed away.
pub fn classify_inward(gas: &GasModel, b: &BoundaryState, r0: f64, opts: ClassifyOptions) -> Result<FlowPattern> {
    b.validate()?;
    require(b.u1 < 0.0, || format!("inward flow needs u1 < 0, got {}", b.u1))?;
    require(r0 > 0.0 && r0 < b.r, || format!("inner radius {r0} must lie in (0, {})", b.r))?;
    let state = FlowState::from_primitive(gas, b.r, b.rho, b.u1, b.u2);
    reject_sonic_data(&state, opts.rtol)?;
    let inv = invariants_from_boundary(gas, b)?;

    let r_limit = limiting_radius(gas, &inv, b.r)?;
    if r0 < r_limit && !close(r0, r_limit, opts.rtol) {
        return Ok(FlowPattern::Inward(InwardPattern::NoGlobalSolution { r_limit }));
    }
    if !close(r0, r_limit, opts.rtol) {
        solve_density(gas, &inv, r0, Branch::from_m1sq(state.m1sq))?;
    }

    let pattern = if state.msq > 1.0 {
        InwardPattern::Supersonic
    } else {
        let r_sonic = sonic_radius(gas, &inv);
        if close(r0, r_sonic, opts.rtol) {
            InwardPattern::SubsonicSonicAtInner { r_sonic }
        } else if r0 > r_sonic {
            InwardPattern::Subsonic
        } else {
            InwardPattern::TransonicDecelerating { r_sonic }
        }
    };
    Ok(FlowPattern::Inward(pattern))
}
