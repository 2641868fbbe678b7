//! Background coefficients of the linearized potential equation around an
//! inward transonic flow, and the multipliers of its energy estimate.
//!
//! The background is the radially subsonic branch of inward flow on
//! `[r0, r1]` with `M1^2 < 1` throughout and `1 < |M|^2(r0) < 2`. After the
//! angular shift `theta -> theta + xi(r)` with
//! `xi' = M1 M2 / (r (1 - M1^2))` the equation loses its mixed derivative.
//! The remaining coefficients are
//!
//! ```text
//! damping        = 2 (1 + M2^2) U1^2 / (r (1 - M1^2)) + (U2^2 + A) / r
//! swirl_source   = 2 U1 U2 / r^2
//! first_order    = damping / (A - U1^2)
//! mixed          = xi'' + (damping xi' + swirl_source) / (A - U1^2)      (vanishes)
//! angular        = (1 - |M|^2) / (r^2 (1 - M1^2)^2)
//! ```
//!
//! and satisfy `2 first_order angular + angular' = 2 |M|^2 (2 - |M|^2) / (r^3 (1 - M1^2)^3)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::gas::{state_from_density, FlowState, GasModel, Invariants};
use crate::numeric::quad::integrate;
use crate::radial::{solve_density, Branch};

const QUAD_RTOL: f64 = 1e-13;

/// Coefficients of the linearized equation at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BackgroundCoeffs {
    pub r: f64,
    pub m1sq: f64,
    pub m2sq: f64,
    pub msq: f64,
    pub damping: f64,
    pub swirl_source: f64,
    /// Derivative of the angular shift.
    pub shear_slope: f64,
    /// Second derivative of the angular shift, in closed form.
    pub shear_curvature: f64,
    pub first_order: f64,
    pub mixed: f64,
    pub angular: f64,
    /// Closed-form radial derivative of `angular`.
    pub angular_slope: f64,
    /// Right side of the coercivity identity.
    pub identity_rhs: f64,
}

/// Coefficients at a background state. Fails unless `M1^2 < 1`.
pub fn coeffs_of_state(gas: &GasModel, s: &FlowState) -> Result<BackgroundCoeffs> {
    if !(s.m1sq < 1.0) {
        return Err(Error::InvalidBackground { radius: s.r, reason: format!("M1^2 = {} is not below 1", s.m1sq) });
    }
    let a = gas.a();
    let r = s.r;
    let (m1, m2) = (s.m1(gas), s.m2(gas));
    let (m1sq, m2sq, msq) = (s.m1sq, s.m2sq, s.msq);
    let d = 1.0 - m1sq;

    let damping = 2.0 * (1.0 + m2sq) * s.u1 * s.u1 / (r * d) + (s.u2 * s.u2 + a) / r;
    let swirl_source = 2.0 * s.u1 * s.u2 / (r * r);
    let shear_slope = m1 * m2 / (r * d);
    let shear_curvature = (-m1 * m2 * (1.0 + m2sq) - 2.0 * m1 * m2 * d) / (r * r * d * d)
        - 2.0 * m1 * m1 * m1 * m2 * (1.0 + m2sq) / (r * r * d * d * d);
    let speed_gap = a - s.u1 * s.u1;
    let first_order = damping / speed_gap;
    let mixed = shear_curvature + (damping * shear_slope + swirl_source) / speed_gap;

    let angular = (1.0 - msq) / (r * r * d * d);
    // chain rule through (|M|^2)' = -2|M|^2/(r d) and (M1^2)' = -2 M1^2 (1 + M2^2)/(r d)
    let num_slope = 2.0 * msq / (r * d);
    let den = r * r * d * d;
    let den_slope = 2.0 * r * d * d + 4.0 * r * m1sq * (1.0 + m2sq);
    let angular_slope = num_slope / den - (1.0 - msq) * den_slope / (den * den);
    let identity_rhs = 2.0 * msq * (2.0 - msq) / (r * r * r * d * d * d);

    Ok(BackgroundCoeffs {
        r,
        m1sq,
        m2sq,
        msq,
        damping,
        swirl_source,
        shear_slope,
        shear_curvature,
        first_order,
        mixed,
        angular,
        angular_slope,
        identity_rhs,
    })
}

/// Background state on the radially subsonic branch.
pub fn background_state(gas: &GasModel, inv: &Invariants, r: f64) -> Result<FlowState> {
    let rho = solve_density(gas, inv, r, Branch::RadialSubsonic)?;
    state_from_density(gas, inv, r, rho)
}

pub fn coeffs_at(gas: &GasModel, inv: &Invariants, r: f64) -> Result<BackgroundCoeffs> {
    coeffs_of_state(gas, &background_state(gas, inv, r)?)
}

/// Outcome of the admissibility check of a background annulus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub msq_r0: Option<f64>,
    pub max_m1sq: Option<f64>,
    pub offending_radius: Option<f64>,
    pub reason: Option<String>,
}

impl AdmissibilityReport {
    fn reject(radius: f64, msq_r0: Option<f64>, max_m1sq: Option<f64>, reason: String) -> Self {
        Self { admissible: false, msq_r0, max_m1sq, offending_radius: Some(radius), reason: Some(reason) }
    }
}

/// Samples used for the `M1^2 < 1` scan.
const ADMISSIBILITY_SAMPLES: usize = 257;

/// Checks `M1^2 < 1` on `[r0, r1]` and `1 < |M|^2(r0) < 2`.
pub fn background_admissible(gas: &GasModel, inv: &Invariants, r0: f64, r1: f64) -> Result<AdmissibilityReport> {
    require(r0 > 0.0 && r1 > r0, || format!("bad annulus [{r0}, {r1}]"))?;
    let mut max_m1sq = f64::NEG_INFINITY;
    let mut msq_r0 = None;
    for i in 0..ADMISSIBILITY_SAMPLES {
        let r = r0 + (r1 - r0) * i as f64 / (ADMISSIBILITY_SAMPLES - 1) as f64;
        let s = match background_state(gas, inv, r) {
            Ok(s) => s,
            Err(e @ (Error::NoRoot { .. } | Error::BranchMerged { .. })) => {
                let seen = (i > 0).then_some(max_m1sq);
                return Ok(AdmissibilityReport::reject(r, msq_r0, seen, e.to_string()));
            }
            Err(e) => return Err(e),
        };
        if i == 0 {
            msq_r0 = Some(s.msq);
        }
        max_m1sq = max_m1sq.max(s.m1sq);
        if s.m1sq >= 1.0 {
            return Ok(AdmissibilityReport::reject(r, msq_r0, Some(max_m1sq), format!("M1^2 = {} is not below 1", s.m1sq)));
        }
    }
    let msq = msq_r0.expect("at least one sample");
    if !(msq > 1.0 && msq < 2.0) {
        return Ok(AdmissibilityReport::reject(r0, msq_r0, Some(max_m1sq), format!("|M|^2(r0) = {msq} is outside (1, 2)")));
    }
    Ok(AdmissibilityReport { admissible: true, msq_r0, max_m1sq: Some(max_m1sq), offending_radius: None, reason: None })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityOptions {
    /// Finite-difference step for `angular'`, relative to `r`.
    pub step_rel: f64,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        Self { step_rel: 1e-5 }
    }
}

/// Residuals of the two coefficient identities over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    /// `max |mixed|`.
    pub max_mixed: f64,
    /// Coercivity identity with `angular'` from a centered difference at step `h`.
    pub fd_residual: f64,
    /// Same with the step halved.
    pub fd_residual_half: f64,
    /// Same with the Richardson combination of the two differences.
    pub richardson_residual: f64,
    /// Same with the closed-form `angular'`.
    pub analytic_residual: f64,
    pub step_rel: f64,
}

/// Checks that `mixed` vanishes and the coercivity identity holds at every
/// grid radius. The background must exist within one step of the grid hull.
pub fn verify_identities(gas: &GasModel, inv: &Invariants, grid: &[f64], opts: IdentityOptions) -> Result<IdentityReport> {
    require(!grid.is_empty(), || "empty grid".into())?;
    require(opts.step_rel > 0.0, || "finite-difference step must be positive".into())?;
    let angular = |r: f64| coeffs_at(gas, inv, r).map(|c| c.angular);
    let mut report = IdentityReport {
        max_mixed: 0.0,
        fd_residual: 0.0,
        fd_residual_half: 0.0,
        richardson_residual: 0.0,
        analytic_residual: 0.0,
        step_rel: opts.step_rel,
    };
    for &r in grid {
        let c = coeffs_at(gas, inv, r)?;
        report.max_mixed = report.max_mixed.max(c.mixed.abs());
        let h = opts.step_rel * r;
        let d_h = (angular(r + h)? - angular(r - h)?) / (2.0 * h);
        let d_half = (angular(r + 0.5 * h)? - angular(r - 0.5 * h)?) / h;
        let d_rich = (4.0 * d_half - d_h) / 3.0;
        let base = 2.0 * c.first_order * c.angular - c.identity_rhs;
        report.fd_residual = report.fd_residual.max((base + d_h).abs());
        report.fd_residual_half = report.fd_residual_half.max((base + d_half).abs());
        report.richardson_residual = report.richardson_residual.max((base + d_rich).abs());
        report.analytic_residual = report.analytic_residual.max((base + c.angular_slope).abs());
    }
    Ok(report)
}

/// Values of the inner slope `w0` for which the inner boundary form is not
/// positive: the open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForbiddenWindow {
    pub lo: f64,
    pub hi: f64,
}

impl ForbiddenWindow {
    pub fn contains(&self, w0: f64) -> bool {
        self.lo < w0 && w0 < self.hi
    }
}

impl fmt::Display for ForbiddenWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// `angular(r0) + (shear_slope(r0) - w0/r0)^2`.
pub fn inner_boundary_form(c: &BackgroundCoeffs, w0: f64) -> f64 {
    let t = c.shear_slope - w0 / c.r;
    c.angular + t * t
}

/// Forbidden interval of inner slopes, nonempty only when `|M|^2(r0) > 1`.
pub fn forbidden_w0(gas: &GasModel, inv: &Invariants, r0: f64) -> Result<ForbiddenWindow> {
    let s = background_state(gas, inv, r0)?;
    coeffs_of_state(gas, &s)?;
    if !(s.msq > 1.0) {
        return Err(Error::EmptyWindow { msq: s.msq });
    }
    let m1m2 = s.m1(gas) * s.m2(gas);
    let root = (s.msq - 1.0).sqrt();
    let d = 1.0 - s.m1sq;
    Ok(ForbiddenWindow { lo: (m1m2 - root) / d, hi: (m1m2 + root) / d })
}

type Coefficient = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Closed-form solutions of the multiplier equations
/// `w1 k - w1'/2 = decay` and `w2 k - w2' = 0` for a positive coefficient
/// `k`, evaluable at any radius of the grid hull.
///
/// With `G(y) = int_{r0}^y k` and `L(y) = int_{r0}^y exp(-2 G)`:
/// `w1 = exp(2 G) (w1(r0) - 2 decay L)` with `w1(r0) = 1 + 2 L(r1)`, and
/// `w2 = w2(r0) exp(G)`.
#[derive(Clone)]
pub struct MultiplierField {
    coefficient: Coefficient,
    grid: Vec<f64>,
    growth: Vec<f64>,
    lag: Vec<f64>,
    decay: f64,
    w1_inner: f64,
    w2_inner: f64,
}

impl fmt::Debug for MultiplierField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierField")
            .field("points", &self.grid.len())
            .field("decay", &self.decay)
            .field("w1_inner", &self.w1_inner)
            .field("w2_inner", &self.w2_inner)
            .finish()
    }
}

impl MultiplierField {
    /// `w2_factor` is `w2(r0) / w1(r0)`.
    pub fn new<K>(coefficient: K, grid: Vec<f64>, decay: f64, w2_factor: f64) -> Result<Self>
    where
        K: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        require(grid.len() >= 2, || "multiplier grid needs at least 2 points".into())?;
        require(grid.windows(2).all(|w| w[1] > w[0]), || "multiplier grid must be increasing".into())?;
        let coefficient: Coefficient = Arc::new(coefficient);
        let mut growth = vec![0.0; grid.len()];
        let mut lag = vec![0.0; grid.len()];
        for i in 1..grid.len() {
            let (a, b) = (grid[i - 1], grid[i]);
            let g0 = growth[i - 1];
            let k = &coefficient;
            growth[i] = g0 + integrate(|t| k(t), a, b, QUAD_RTOL, 0.0);
            lag[i] = lag[i - 1]
                + integrate(|t| (-2.0 * (g0 + integrate(|s| k(s), a, t, QUAD_RTOL, 0.0))).exp(), a, b, QUAD_RTOL, 0.0);
        }
        if !(growth.iter().chain(&lag).all(|v| v.is_finite())) {
            return Err(Error::InvalidBackground {
                radius: grid[0],
                reason: "multiplier coefficient is not finite on the grid".into(),
            });
        }
        let w1_inner = 1.0 + 2.0 * lag[grid.len() - 1];
        Ok(Self { coefficient, grid, growth, lag, decay, w1_inner, w2_inner: w2_factor * w1_inner })
    }

    fn anchor(&self, y: f64) -> usize {
        match self.grid.binary_search_by(|g| g.partial_cmp(&y).expect("finite radius")) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i == self.grid.len() => i - 1,
            Err(i) => {
                if y - self.grid[i - 1] <= self.grid[i] - y {
                    i - 1
                } else {
                    i
                }
            }
        }
    }

    fn growth_lag(&self, y: f64) -> (f64, f64) {
        let i = self.anchor(y);
        let a = self.grid[i];
        if y == a {
            return (self.growth[i], self.lag[i]);
        }
        let k = &self.coefficient;
        let g0 = self.growth[i];
        let growth = g0 + integrate(|t| k(t), a, y, QUAD_RTOL, 0.0);
        let lag = self.lag[i]
            + integrate(|t| (-2.0 * (g0 + integrate(|s| k(s), a, t, QUAD_RTOL, 0.0))).exp(), a, y, QUAD_RTOL, 0.0);
        (growth, lag)
    }

    pub fn w1(&self, y: f64) -> f64 {
        let (g, l) = self.growth_lag(y);
        (2.0 * g).exp() * (self.w1_inner - 2.0 * self.decay * l)
    }

    pub fn w2(&self, y: f64) -> f64 {
        self.w2_inner * self.growth_lag(y).0.exp()
    }

    pub fn coefficient(&self, y: f64) -> f64 {
        (self.coefficient)(y)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn w1_inner(&self) -> f64 {
        self.w1_inner
    }

    /// `w1` at the grid nodes, from the tabulated integrals.
    pub fn w1_on_grid(&self) -> Vec<f64> {
        self.growth
            .iter()
            .zip(&self.lag)
            .map(|(g, l)| (2.0 * g).exp() * (self.w1_inner - 2.0 * self.decay * l))
            .collect()
    }

    pub fn w2_on_grid(&self) -> Vec<f64> {
        self.growth.iter().map(|g| self.w2_inner * g.exp()).collect()
    }
}

/// Energy-estimate multipliers on a background annulus.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplierPair {
    pub grid: Vec<f64>,
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
    pub w0: f64,
    /// Right side of the `w1` equation.
    pub decay: f64,
    /// Angular coercivity rate, equal to `decay`.
    pub angular_rate: f64,
    /// `min (w1 angular)'` over the grid.
    pub coercivity: f64,
    /// `min(angular_rate, coercivity) / 2`.
    pub energy_constant: f64,
    pub boundary_r0: f64,
    pub boundary_r1: f64,
    #[serde(skip)]
    pub field: MultiplierField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierOptions {
    pub w0: f64,
    pub decay: f64,
    pub n: usize,
}

impl Default for MultiplierOptions {
    fn default() -> Self {
        Self { w0: 0.0, decay: 0.1, n: 400 }
    }
}

fn uniform(r0: f64, r1: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i == n - 1 { r1 } else { r0 + (r1 - r0) * i as f64 / (n - 1) as f64 }).collect()
}

/// Builds `w1`, `w2` and the coercivity constants on an `n`-point grid.
pub fn build_multipliers(
    gas: &GasModel,
    inv: &Invariants,
    r0: f64,
    r1: f64,
    opts: MultiplierOptions,
) -> Result<MultiplierPair> {
    require(opts.n >= 3, || format!("multiplier grid needs at least 3 points, got {}", opts.n))?;
    require(opts.decay > 0.0 && opts.decay.is_finite(), || format!("decay must be positive, got {}", opts.decay))?;
    require(opts.w0.is_finite(), || "w0 must be finite".into())?;
    let report = background_admissible(gas, inv, r0, r1)?;
    if !report.admissible {
        return Err(Error::InvalidBackground {
            radius: report.offending_radius.unwrap_or(r0),
            reason: report.reason.unwrap_or_default(),
        });
    }
    let window = forbidden_w0(gas, inv, r0)?;
    if window.contains(opts.w0) {
        return Err(Error::W0Forbidden { w0: opts.w0, lo: window.lo, hi: window.hi });
    }

    let grid = uniform(r0, r1, opts.n);
    let coeffs = grid.iter().map(|&r| coeffs_at(gas, inv, r)).collect::<Result<Vec<_>>>()?;
    let inner = coeffs[0];
    let (g, iv) = (*gas, *inv);
    let k = move |r: f64| coeffs_at(&g, &iv, r).map(|c| c.first_order).unwrap_or(f64::NAN);
    let w2_factor = inner.shear_slope - opts.w0 / r0;
    let field = MultiplierField::new(k, grid.clone(), opts.decay, w2_factor)?;
    let w1 = field.w1_on_grid();
    let w2 = field.w2_on_grid();

    if let Some((i, &v)) = w1.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NonPositiveW1 { radius: grid[i], value: v });
    }
    let (coercivity, at) = coeffs
        .iter()
        .zip(&w1)
        .map(|(c, &w)| {
            let w_slope = 2.0 * c.first_order * w - 2.0 * opts.decay;
            (w_slope * c.angular + w * c.angular_slope, c.r)
        })
        .fold((f64::INFINITY, r0), |acc, v| if v.0 < acc.0 { v } else { acc });
    if !(coercivity > 0.0) {
        return Err(Error::NonPositiveSigma3 { sigma3: coercivity, radius: at });
    }
    let outer = coeffs[coeffs.len() - 1];
    let (w1_out, w2_out) = (w1[w1.len() - 1], w2[w2.len() - 1]);
    Ok(MultiplierPair {
        boundary_r0: inner_boundary_form(&inner, opts.w0),
        boundary_r1: (w2_out * w2_out + outer.angular * w1_out * w1_out) / w1_out,
        grid,
        w1,
        w2,
        w0: opts.w0,
        decay: opts.decay,
        angular_rate: opts.decay,
        coercivity,
        energy_constant: 0.5 * opts.decay.min(coercivity),
        field,
    })
}

/// Coefficients of the background at every node of a multiplier grid.
pub fn sample_coeffs(gas: &GasModel, inv: &Invariants, grid: &[f64]) -> Result<Vec<BackgroundCoeffs>> {
    grid.iter().map(|&r| coeffs_at(gas, inv, r)).collect()
}

/// Largest defects of `w1 k - w1'/2 = decay` and `w2 k - w2' = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplierResiduals {
    pub w1: f64,
    pub w2: f64,
    pub step: f64,
}

fn check_grid(pair: &MultiplierPair, coeffs: &[BackgroundCoeffs]) -> Result<()> {
    if coeffs.len() != pair.grid.len() {
        return Err(Error::GridMismatch(format!("{} coefficients for {} grid points", coeffs.len(), pair.grid.len())));
    }
    if let Some(c) = coeffs.iter().zip(&pair.grid).find(|(c, &r)| (c.r - r).abs() > 1e-12 * r) {
        return Err(Error::GridMismatch(format!("coefficient radius {} off the grid", c.0.r)));
    }
    Ok(())
}

/// Residuals with derivatives by centered differences of the sampled
/// multipliers at interior grid nodes. Second order in the grid step.
#[allow(clippy::needless_range_loop)]
pub fn multiplier_residuals(pair: &MultiplierPair, coeffs: &[BackgroundCoeffs]) -> Result<MultiplierResiduals> {
    check_grid(pair, coeffs)?;
    let n = pair.grid.len();
    let mut res = MultiplierResiduals { w1: 0.0, w2: 0.0, step: pair.grid[1] - pair.grid[0] };
    for i in 1..n - 1 {
        let span = pair.grid[i + 1] - pair.grid[i - 1];
        let k = coeffs[i].first_order;
        let w1_slope = (pair.w1[i + 1] - pair.w1[i - 1]) / span;
        let w2_slope = (pair.w2[i + 1] - pair.w2[i - 1]) / span;
        res.w1 = res.w1.max((pair.w1[i] * k - 0.5 * w1_slope - pair.decay).abs());
        res.w2 = res.w2.max((pair.w2[i] * k - w2_slope).abs());
    }
    Ok(res)
}

/// Default relative step of [`multiplier_residuals_refined`].
pub const REFINED_STEP: f64 = 3e-5;

/// Residuals at every grid node with derivatives by Richardson-extrapolated
/// centered differences of the continuous multipliers at step `step_rel * r`.
/// End nodes are sampled two steps inside the grid.
pub fn multiplier_residuals_refined(
    pair: &MultiplierPair,
    coeffs: &[BackgroundCoeffs],
    step_rel: f64,
) -> Result<MultiplierResiduals> {
    check_grid(pair, coeffs)?;
    require(step_rel > 0.0, || "finite-difference step must be positive".into())?;
    let f = &pair.field;
    let n = pair.grid.len();
    let slope = |w: &dyn Fn(f64) -> f64, y: f64, h: f64| {
        let d_h = (w(y + h) - w(y - h)) / (2.0 * h);
        let d_half = (w(y + 0.5 * h) - w(y - 0.5 * h)) / h;
        (4.0 * d_half - d_h) / 3.0
    };
    let mut res = MultiplierResiduals { w1: 0.0, w2: 0.0, step: step_rel };
    for (i, &r) in pair.grid.iter().enumerate() {
        let h = step_rel * r;
        let y = if i == 0 {
            r + 2.0 * h
        } else if i == n - 1 {
            r - 2.0 * h
        } else {
            r
        };
        let k = if y == r { coeffs[i].first_order } else { f.coefficient(y) };
        let w1 = |t: f64| f.w1(t);
        let w2 = |t: f64| f.w2(t);
        res.w1 = res.w1.max((f.w1(y) * k - 0.5 * slope(&w1, y, h) - pair.decay).abs());
        res.w2 = res.w2.max((f.w2(y) * k - slope(&w2, y, h)).abs());
    }
    Ok(res)
}
