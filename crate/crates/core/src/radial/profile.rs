//! Radial profiles on a uniform grid and their cross-check against the
//! differential form of the radial Euler system.

use serde::Serialize;

use super::{solve_density, Branch};
use crate::error::{require, Error, Result};
use crate::gas::{state_from_density, FlowState, GasModel, Invariants};
use crate::numeric::ode::rk4_on_grid;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    #[serde(flatten)]
    pub state: FlowState,
    pub branch: Branch,
}

/// Samples the smooth flow on `n` uniformly spaced radii in `[r_lo, r_hi]`.
pub fn profile(
    gas: &GasModel,
    inv: &Invariants,
    branch: Branch,
    r_lo: f64,
    r_hi: f64,
    n: usize,
) -> Result<Vec<ProfileRow>> {
    require(n >= 2, || format!("a profile needs at least 2 rows, got {n}"))?;
    require(r_lo > 0.0 && r_hi > r_lo, || format!("bad radial interval [{r_lo}, {r_hi}]"))?;
    (0..n)
        .map(|i| {
            let r = if i == n - 1 { r_hi } else { r_lo + (r_hi - r_lo) * i as f64 / (n - 1) as f64 };
            let rho = solve_density(gas, inv, r, branch)?;
            Ok(ProfileRow { state: state_from_density(gas, inv, r, rho)?, branch })
        })
        .collect()
}

/// Closed-form radial derivatives of a smooth state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Derivatives {
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
    pub m1sq: f64,
    pub m2sq: f64,
    pub msq: f64,
}

impl Derivatives {
    pub fn of(s: &FlowState) -> Self {
        let r = s.r;
        let d = r * (1.0 - s.m1sq);
        Self {
            rho: s.rho * s.msq / d,
            u1: -s.u1 * (1.0 + s.m2sq) / d,
            u2: -s.u2 / r,
            m1sq: s.m1sq * (2.0 + 2.0 * s.m2sq) / (r * (s.m1sq - 1.0)),
            m2sq: -2.0 * s.m2sq / r,
            msq: -2.0 * s.msq / d,
        }
    }
}

/// Largest pointwise mismatch between centered differences and the closed
/// forms, one entry per quantity.
pub type DerivativeResiduals = Derivatives;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeCheckReport {
    pub step: f64,
    pub fd_residuals: DerivativeResiduals,
    /// Sup-norm gap between the algebraic profile and an RK4 integration of
    /// `(rho, U1, U2)` started from the first row.
    pub integration_deviation: f64,
    /// Largest relative drift of `r U2` along the rows.
    pub swirl_drift: f64,
    /// Largest relative drift of `r rho U1` along the rows.
    pub mass_drift: f64,
}

impl OdeCheckReport {
    pub fn max_fd_residual(&self) -> f64 {
        let d = &self.fd_residuals;
        [d.rho, d.u1, d.u2, d.m1sq, d.m2sq, d.msq].into_iter().fold(0.0, f64::max)
    }
}

/// Cross-checks a profile against the derivative system.
pub fn ode_check(gas: &GasModel, rows: &[ProfileRow]) -> Result<OdeCheckReport> {
    require(rows.len() >= 5, || format!("ode_check needs at least 5 rows, got {}", rows.len()))?;
    let n = rows.len();
    let h = (rows[n - 1].state.r - rows[0].state.r) / (n - 1) as f64;
    for w in rows.windows(2) {
        let dr = w[1].state.r - w[0].state.r;
        if (dr - h).abs() > 1e-8 * h {
            return Err(Error::InvalidInput("rows must be uniformly spaced".into()));
        }
        if w[0].branch != w[1].branch {
            return Err(Error::InvalidInput("rows switch branch".into()));
        }
    }

    let mut fd = Derivatives { rho: 0.0, u1: 0.0, u2: 0.0, m1sq: 0.0, m2sq: 0.0, msq: 0.0 };
    for i in 1..n - 1 {
        let (a, s, b) = (&rows[i - 1].state, &rows[i].state, &rows[i + 1].state);
        let span = b.r - a.r;
        let exact = Derivatives::of(s);
        let diff = |hi: f64, lo: f64, e: f64| ((hi - lo) / span - e).abs();
        fd.rho = fd.rho.max(diff(b.rho, a.rho, exact.rho));
        fd.u1 = fd.u1.max(diff(b.u1, a.u1, exact.u1));
        fd.u2 = fd.u2.max(diff(b.u2, a.u2, exact.u2));
        fd.m1sq = fd.m1sq.max(diff(b.m1sq, a.m1sq, exact.m1sq));
        fd.m2sq = fd.m2sq.max(diff(b.m2sq, a.m2sq, exact.m2sq));
        fd.msq = fd.msq.max(diff(b.msq, a.msq, exact.msq));
    }

    let rhs = |r: f64, y: &[f64; 3]| -> [f64; 3] {
        let s = FlowState::from_primitive(gas, r, y[0], y[1], y[2]);
        let d = Derivatives::of(&s);
        [d.rho, d.u1, d.u2]
    };
    let radii: Vec<f64> = rows.iter().map(|row| row.state.r).collect();
    let first = rows[0].state;
    let integrated = rk4_on_grid(&rhs, &radii, [first.rho, first.u1, first.u2]);
    let integration_deviation = rows
        .iter()
        .zip(&integrated)
        .map(|(row, y)| {
            let s = &row.state;
            (s.rho - y[0]).abs().max((s.u1 - y[1]).abs()).max((s.u2 - y[2]).abs())
        })
        .fold(0.0, f64::max);

    let m1 = first.r * first.rho * first.u1;
    let m2 = first.r * first.u2;
    let drift = |reference: f64, f: &dyn Fn(&FlowState) -> f64| {
        let scale = reference.abs().max(f64::MIN_POSITIVE);
        rows.iter().map(|row| (f(&row.state) - reference).abs() / scale).fold(0.0, f64::max)
    };
    let swirl_drift = if m2 == 0.0 { 0.0 } else { drift(m2, &|s| s.r * s.u2) };
    let mass_drift = drift(m1, &|s| s.r * s.rho * s.u1);

    Ok(OdeCheckReport { step: h, fd_residuals: fd, integration_deviation, swirl_drift, mass_drift })
}
