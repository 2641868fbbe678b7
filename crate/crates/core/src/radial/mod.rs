//! Smooth radially symmetric flows: the algebraic density equation, its two
//! branches, the sonic and limiting circles, pattern classification and
//! profile generation.
//!
//! For fixed invariants the density at radius `r` solves
//!
//! ```text
//! Q_r(rho) = A rho^2 ln(rho) - K(r) rho^2 + m1^2 / (2 r^2) = 0,   K(r) = B - m2^2 / (2 r^2)
//! ```
//!
//! `Q_r` decreases on `(0, rho*(r))` and increases afterwards, with
//! `rho*(r) = exp(K(r)/A - 1/2)`. Its minimum value
//! `-A/2 rho*^2 + m1^2/(2 r^2)` is strictly decreasing in `r`, so there is a
//! single limiting radius below which no smooth flow exists. Above it the
//! equation has a radially supersonic root below `rho*` and a radially
//! subsonic root above it.

mod classify;
mod profile;

pub use classify::{
    classify_inward, classify_outward, ClassifyOptions, FlowPattern, InwardPattern, OutwardPattern,
};
pub use profile::{ode_check, profile, DerivativeResiduals, OdeCheckReport, ProfileRow};

use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::gas::{GasModel, Invariants};
use crate::numeric::roots::{solve_bracketed, Tolerance};

/// Relative width of the band around a vanishing minimum of `Q_r` in which
/// the two density branches are reported as merged.
pub const MERGE_RTOL: f64 = 1e-13;

/// Which root of `Q_r(rho) = 0` to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `rho < rho*(r)`, radial Mach number above one.
    RadialSupersonic,
    /// `rho > rho*(r)`, radial Mach number below one.
    RadialSubsonic,
}

impl Branch {
    /// Branch of a state with the given squared radial Mach number.
    pub fn from_m1sq(m1sq: f64) -> Self {
        if m1sq > 1.0 {
            Branch::RadialSupersonic
        } else {
            Branch::RadialSubsonic
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Branch::RadialSupersonic => "RadialSupersonic",
            Branch::RadialSubsonic => "RadialSubsonic",
        }
    }
}

/// Densities and radii that organise a family of smooth flows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalRadii {
    /// Density of any sonic state, `exp(B/A - 1/2)`.
    pub rho_sonic: f64,
    pub r_sonic: Option<f64>,
    /// Radius where `K(r)` vanishes; `None` when `B <= 0` and `m2 != 0`.
    pub r_threshold: Option<f64>,
    pub r_limit: Option<f64>,
}

/// `Q_r(rho)`.
pub fn q_residual(gas: &GasModel, inv: &Invariants, r: f64, rho: f64) -> f64 {
    let a = gas.a();
    a * rho * rho * rho.ln() - inv.reduced_bernoulli(r) * rho * rho + inv.m1 * inv.m1 / (2.0 * r * r)
}

/// Magnitude used to judge the size of `Q_r`: `A rho*^2 + m1^2/(2 r^2)`.
pub fn q_scale(gas: &GasModel, inv: &Invariants, r: f64) -> f64 {
    let rs = rho_star(gas, inv, r);
    gas.a() * rs * rs + inv.m1 * inv.m1 / (2.0 * r * r)
}

/// Minimiser of `Q_r` over positive densities.
pub fn rho_star(gas: &GasModel, inv: &Invariants, r: f64) -> f64 {
    (inv.reduced_bernoulli(r) / gas.a() - 0.5).exp()
}

/// Density of a sonic state (`|M| = 1`) on the Bernoulli surface.
pub fn critical_density(gas: &GasModel, inv: &Invariants) -> f64 {
    (inv.b / gas.a() - 0.5).exp()
}

/// Radius of the sonic circle,
/// `sqrt((m1^2 + m2^2 rho_sonic^2) / (2 (B - A ln rho_sonic) rho_sonic^2))`.
pub fn sonic_radius(gas: &GasModel, inv: &Invariants) -> f64 {
    let rho_sonic = critical_density(gas, inv);
    let num = inv.m1 * inv.m1 + inv.m2 * inv.m2 * rho_sonic * rho_sonic;
    let den = 2.0 * (inv.b - gas.a() * rho_sonic.ln()) * rho_sonic * rho_sonic;
    (num / den).sqrt()
}

/// Radius where `K(r) = 0`, i.e. `|m2| / sqrt(2B)`.
pub fn existence_threshold(inv: &Invariants) -> Option<f64> {
    if inv.m2 == 0.0 {
        Some(0.0)
    } else if inv.b > 0.0 {
        Some(inv.m2.abs() / (2.0 * inv.b).sqrt())
    } else {
        None
    }
}

fn check_radius(r: f64) -> Result<()> {
    require(r.is_finite() && r > 0.0, || format!("radius must be positive, got {r}"))
}

/// Density on the requested branch at radius `r`.
pub fn solve_density(gas: &GasModel, inv: &Invariants, r: f64, branch: Branch) -> Result<f64> {
    check_radius(r)?;
    require(inv.m1 != 0.0 && inv.m1.is_finite(), || "mass flux m1 must be nonzero".into())?;
    let q = |rho: f64| q_residual(gas, inv, r, rho);

    let rho_min = rho_star(gas, inv, r);
    let q_min = q(rho_min);
    let band = MERGE_RTOL * q_scale(gas, inv, r);
    if q_min > band {
        return Err(Error::NoRoot { radius: r });
    }
    if q_min >= -band {
        return Err(Error::BranchMerged { radius: r });
    }

    let tol = Tolerance::default();
    match branch {
        Branch::RadialSubsonic => {
            // any root has A ln(rho) < K(r) <= B
            let hi = (inv.b / gas.a()).exp();
            solve_bracketed(q, rho_min, hi, tol)
        }
        Branch::RadialSupersonic => {
            let mut lo = 0.5 * rho_min;
            while q(lo) <= 0.0 {
                lo *= 0.5;
                if lo < f64::MIN_POSITIVE {
                    return Err(Error::NoConvergence(format!("no supersonic bracket at r = {r}")));
                }
            }
            solve_bracketed(q, lo, rho_min, tol)
        }
    }
}

/// `Q_r(rho*(r))`, the minimum of the density equation at radius `r`.
pub fn branch_gap_indicator(gas: &GasModel, inv: &Invariants, r: f64) -> f64 {
    q_residual(gas, inv, r, rho_star(gas, inv, r))
}

/// Radius of the limiting circle below `r_data`, where the two branches merge.
///
/// Fails with [`Error::NotApplicable`] when no smooth state exists at
/// `r_data` itself.
pub fn limiting_radius(gas: &GasModel, inv: &Invariants, r_data: f64) -> Result<f64> {
    check_radius(r_data)?;
    require(inv.m1 != 0.0, || "mass flux m1 must be nonzero".into())?;
    let g = |r: f64| branch_gap_indicator(gas, inv, r);
    let g_data = g(r_data);
    if g_data > 0.0 {
        return Err(Error::NotApplicable(format!(
            "the density equation has no root at the data radius {r_data}"
        )));
    }
    if g_data == 0.0 {
        return Ok(r_data);
    }
    let mut lo = 0.5 * r_data;
    while g(lo) <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::NoConvergence("limiting circle bracket".into()));
        }
    }
    solve_bracketed(g, lo, r_data, Tolerance::default())
}

/// Collects the critical quantities of the invariants seen from `r_data`.
pub fn critical_radii(gas: &GasModel, inv: &Invariants, r_data: f64) -> CriticalRadii {
    let r_sonic = sonic_radius(gas, inv);
    CriticalRadii {
        rho_sonic: critical_density(gas, inv),
        r_sonic: (r_sonic.is_finite() && r_sonic > 0.0).then_some(r_sonic),
        r_threshold: existence_threshold(inv),
        r_limit: limiting_radius(gas, inv, r_data).ok(),
    }
}
