//! Radial shocks in outward supersonic flow.
//!
//! A shock at radius `r_b` joins the radially supersonic upstream branch to
//! a radially subsonic downstream branch. Mass, radial momentum and angular
//! momentum are conserved across the front, which forces
//! `U1+ U1- = A`, `rho+ = rho- (U1-)^2 / A` and `U2+ = U2-`. The Bernoulli
//! value cannot be conserved as well: it drops by
//! `A (1/2 (1/M^2 - M^2) + 2 ln M)` with `M = |U1-| / sqrt(A)`, and the
//! downstream flow is carried by its own constant `B+`.
//!
//! The exit pressure `A rho+(r1)` is strictly decreasing in `r_b`, so a
//! prescribed exit pressure inside the admissible window fixes the shock
//! position uniquely.

use std::fmt;

use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::gas::{invariants_from_boundary, state_from_density, BoundaryState, FlowState, GasModel, Invariants};
use crate::numeric::roots::{solve_bracketed, Tolerance};
use crate::radial::{critical_density, profile, q_residual, solve_density, sonic_radius, Branch, ProfileRow};

/// Relative offset of the window endpoints from the annulus boundaries.
pub const WINDOW_OFFSET: f64 = 1e-9;

/// Sonic band used by the default options.
pub const SONIC_BAND: f64 = 1e-9;

/// Position of a state relative to the sonic threshold `|M| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MachClass {
    Supersonic,
    Subsonic,
    Sonic,
}

impl MachClass {
    /// Classifies `|M|^2 - 1` with a symmetric band around zero.
    pub fn from_excess(excess: f64, band: f64) -> Self {
        if excess.abs() <= band {
            MachClass::Sonic
        } else if excess > 0.0 {
            MachClass::Supersonic
        } else {
            MachClass::Subsonic
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MachClass::Supersonic => "Supersonic",
            MachClass::Subsonic => "Subsonic",
            MachClass::Sonic => "Sonic",
        }
    }
}

impl fmt::Display for MachClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// States on both sides of a radial shock front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpPair {
    pub upstream: FlowState,
    pub downstream: FlowState,
    /// `p+ - p-`, positive for an admissible shock.
    pub pressure_jump: f64,
    /// `B+ - B-`, negative for an admissible shock.
    pub bernoulli_jump: f64,
}

/// Relative defects of the three conservation laws across a front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpResiduals {
    pub mass: f64,
    pub momentum: f64,
    pub swirl: f64,
}

impl JumpResiduals {
    pub fn max(&self) -> f64 {
        self.mass.max(self.momentum).max(self.swirl)
    }
}

impl JumpPair {
    /// Defects of `[rho U1]`, `[rho U1^2 + p]` and `[rho U1 U2]`, each scaled
    /// by the upstream magnitude of the flux.
    pub fn residuals(&self) -> JumpResiduals {
        let (l, r) = (&self.upstream, &self.downstream);
        let flux_l = l.rho * l.u1;
        let flux_r = r.rho * r.u1;
        let mom_l = l.rho * l.u1 * l.u1 + l.p;
        let mom_r = r.rho * r.u1 * r.u1 + r.p;
        let swirl_scale = flux_l.abs() * (l.u2.abs() + (l.p / l.rho).sqrt());
        JumpResiduals {
            mass: (flux_r - flux_l).abs() / flux_l.abs(),
            momentum: (mom_r - mom_l).abs() / mom_l.abs(),
            swirl: (flux_r * r.u2 - flux_l * l.u2).abs() / swirl_scale,
        }
    }
}

/// Bernoulli drop across an admissible front with upstream radial speed `u1`.
pub fn bernoulli_jump_closed_form(gas: &GasModel, u1: f64) -> f64 {
    let a = gas.a();
    let msq = u1 * u1 / a;
    a * (0.5 * (1.0 / msq - msq) + msq.ln())
}

/// Downstream state of a radial shock with the given upstream state.
pub fn rh_jump(gas: &GasModel, upstream: &FlowState) -> Result<JumpPair> {
    if !(upstream.m1sq > 1.0) {
        return Err(Error::InadmissibleJump { m1sq: upstream.m1sq });
    }
    let a = gas.a();
    let u1 = a / upstream.u1;
    let rho = upstream.rho * upstream.u1 * upstream.u1 / a;
    let downstream = FlowState::from_primitive(gas, upstream.r, rho, u1, upstream.u2);
    Ok(JumpPair {
        upstream: *upstream,
        downstream,
        pressure_jump: downstream.p - upstream.p,
        bernoulli_jump: bernoulli_jump_closed_form(gas, upstream.u1),
    })
}

/// `(A - U2^2)/A * U1^2/A` for the upstream state. The state just behind a
/// shock is supersonic when this is below 1 and subsonic when above.
pub fn behind_shock_indicator(gas: &GasModel, upstream: &FlowState) -> f64 {
    let a = gas.a();
    (a - upstream.u2 * upstream.u2) / a * (upstream.u1 * upstream.u1 / a)
}

/// Mach class just behind a shock, read off the upstream indicator.
pub fn behind_shock_class(gas: &GasModel, upstream: &FlowState, band: f64) -> Result<MachClass> {
    if !(upstream.m1sq > 1.0) {
        return Err(Error::InadmissibleJump { m1sq: upstream.m1sq });
    }
    Ok(MachClass::from_excess(1.0 - behind_shock_indicator(gas, upstream), band))
}

/// Mach class just behind a shock, read off the jumped state.
///
/// `|M+|^2 - 1 = (1 - indicator) / M1-^2`, so the band is scaled by `M1-^2`
/// to coincide with the band of [`behind_shock_class`].
pub fn behind_shock_class_direct(gas: &GasModel, upstream: &FlowState, band: f64) -> Result<MachClass> {
    let jump = rh_jump(gas, upstream)?;
    Ok(MachClass::from_excess((jump.downstream.msq - 1.0) * upstream.m1sq, band))
}

/// Radii governing the state behind a shock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwirlRadii {
    /// Where the upstream swirl speed equals the sound speed, `|m2| / sqrt(A)`.
    pub swirl_sonic: f64,
    /// Where a shock leaves exactly sonic flow behind it. Shocks inside this
    /// radius leave supersonic flow, shocks outside leave subsonic flow.
    pub sonic_behind: Option<f64>,
}

fn upstream_state(gas: &GasModel, inv: &Invariants, r: f64) -> Result<FlowState> {
    let rho = solve_density(gas, inv, r, Branch::RadialSupersonic)?;
    state_from_density(gas, inv, r, rho)
}

/// Locates the radius beyond which shocks leave subsonic flow behind.
pub fn swirl_radii(gas: &GasModel, inv: &Invariants, r0: f64, r_max: f64) -> Result<SwirlRadii> {
    require(r0 > 0.0 && r_max > r0, || format!("bad radial interval ({r0}, {r_max}]"))?;
    require(inv.m1 > 0.0, || "shock analysis needs outward flow (m1 > 0)".into())?;
    let swirl_sonic = inv.m2.abs() / gas.sound_speed();
    let indicator = |r: f64| upstream_state(gas, inv, r).map(|s| behind_shock_indicator(gas, &s) - 1.0);
    let first = upstream_state(gas, inv, r0)?;
    require(first.m1sq > 1.0, || format!("upstream flow at r0 = {r0} is not radially supersonic"))?;

    let left = swirl_sonic.max(r0);
    let none = SwirlRadii { swirl_sonic, sonic_behind: None };
    if left >= r_max {
        return Ok(none);
    }
    let f_left = indicator(left)?;
    if f_left >= 0.0 {
        return Ok(none);
    }
    if indicator(r_max)? < 0.0 {
        return Ok(none);
    }
    // the indicator is increasing beyond the swirl-sonic radius
    let root = solve_bracketed(|r| indicator(r).unwrap_or(f64::NAN), left, r_max, Tolerance::default())?;
    Ok(SwirlRadii { swirl_sonic, sonic_behind: Some(root) })
}

/// Wave pattern of a shock solution between the shock and the exit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShockPattern {
    /// Supersonic behind the shock and at the exit.
    SupSupAllSupersonic,
    /// Supersonic behind the shock, smooth sonic passage, subsonic exit.
    SupSupSmoothToSubsonic,
    /// Supersonic behind the shock, sonic exactly at the exit.
    SupSupSonicAtExit,
    /// Subsonic behind the shock.
    SupSub,
    /// The shock sits on the downstream sonic circle.
    SupSonicShockOnSonicCircle,
}

impl ShockPattern {
    pub fn name(&self) -> &'static str {
        match self {
            ShockPattern::SupSupAllSupersonic => "SupSup_AllSupersonic",
            ShockPattern::SupSupSmoothToSubsonic => "SupSup_SmoothToSubsonic",
            ShockPattern::SupSupSonicAtExit => "SupSup_SonicAtExit",
            ShockPattern::SupSub => "SupSub",
            ShockPattern::SupSonicShockOnSonicCircle => "SupSonic_ShockOnSonicCircle",
        }
    }

    /// True for the patterns that are supersonic just behind the front.
    pub fn is_supersonic_behind(&self) -> bool {
        matches!(
            self,
            ShockPattern::SupSupAllSupersonic | ShockPattern::SupSupSmoothToSubsonic | ShockPattern::SupSupSonicAtExit
        )
    }
}

impl fmt::Display for ShockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockOptions {
    /// Rows in each of the upstream and downstream profiles.
    pub n_profile: usize,
    /// Band around `|M|^2 = 1` reported as sonic.
    pub sonic_band: f64,
}

impl Default for ShockOptions {
    fn default() -> Self {
        Self { n_profile: 101, sonic_band: SONIC_BAND }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShockSolution {
    pub r0: f64,
    pub r_b: f64,
    pub r1: f64,
    pub p_ex: f64,
    pub upstream_inv: Invariants,
    /// Same fluxes as upstream, Bernoulli value of the post-jump state.
    pub downstream_inv: Invariants,
    pub jump: JumpPair,
    pub upstream_profile: Vec<ProfileRow>,
    pub downstream_profile: Vec<ProfileRow>,
    pub behind_shock: MachClass,
    pub exit_state: MachClass,
    /// Sonic circle of the downstream flow when it passes smoothly from
    /// supersonic to subsonic.
    pub downstream_sonic_radius: Option<f64>,
}

impl ShockSolution {
    pub fn pattern(&self) -> ShockPattern {
        classify_shock_solution(self)
    }

    pub fn exit_state_row(&self) -> &FlowState {
        &self.downstream_profile.last().expect("downstream profile is never empty").state
    }
}

/// Taxonomy tag of a shock solution.
pub fn classify_shock_solution(sol: &ShockSolution) -> ShockPattern {
    match (sol.behind_shock, sol.exit_state) {
        (MachClass::Sonic, _) => ShockPattern::SupSonicShockOnSonicCircle,
        (MachClass::Subsonic, _) => ShockPattern::SupSub,
        (MachClass::Supersonic, MachClass::Supersonic) => ShockPattern::SupSupAllSupersonic,
        (MachClass::Supersonic, MachClass::Sonic) => ShockPattern::SupSupSonicAtExit,
        (MachClass::Supersonic, MachClass::Subsonic) => ShockPattern::SupSupSmoothToSubsonic,
    }
}

fn outward_inlet(gas: &GasModel, inlet: &BoundaryState) -> Result<Invariants> {
    let inv = invariants_from_boundary(gas, inlet)?;
    require(inlet.u1 > 0.0, || "shock analysis needs outward flow (u1 > 0)".into())?;
    require(inlet.u1 * inlet.u1 > gas.a(), || {
        format!("inlet radial Mach number squared {} is not above 1", inlet.u1 * inlet.u1 / gas.a())
    })?;
    Ok(inv)
}

fn check_positions(r0: f64, r_b: f64, r1: f64) -> Result<()> {
    require(r0 < r_b && r_b < r1, || format!("shock radius {r_b} must lie in ({r0}, {r1})"))
}

/// Jump at `r_b` plus the downstream invariants.
fn jump_at(gas: &GasModel, inv: &Invariants, r_b: f64) -> Result<(JumpPair, Invariants)> {
    let up = upstream_state(gas, inv, r_b)?;
    let jump = rh_jump(gas, &up)?;
    let d = &jump.downstream;
    let down_inv = inv.with_bernoulli(gas.bernoulli(d.rho, d.u1, d.u2));
    Ok((jump, down_inv))
}

fn exit_density(gas: &GasModel, inv: &Invariants, r_b: f64, r1: f64) -> Result<(f64, Invariants)> {
    let (_, down_inv) = jump_at(gas, inv, r_b)?;
    Ok((solve_density(gas, &down_inv, r1, Branch::RadialSubsonic)?, down_inv))
}

/// Exit pressure produced by a shock at `r_b`, without building profiles.
pub fn exit_pressure(gas: &GasModel, inlet: &BoundaryState, r_b: f64, r1: f64) -> Result<f64> {
    let inv = outward_inlet(gas, inlet)?;
    check_positions(inlet.r, r_b, r1)?;
    Ok(gas.pressure(exit_density(gas, &inv, r_b, r1)?.0))
}

/// Full shock solution with the front at `r_b`.
pub fn exit_pressure_of_shock(
    gas: &GasModel,
    inlet: &BoundaryState,
    r_b: f64,
    r1: f64,
    opts: ShockOptions,
) -> Result<ShockSolution> {
    let inv = outward_inlet(gas, inlet)?;
    check_positions(inlet.r, r_b, r1)?;
    let r0 = inlet.r;
    let upstream_profile = profile(gas, &inv, Branch::RadialSupersonic, r0, r_b, opts.n_profile)?;
    let (jump, down_inv) = jump_at(gas, &inv, r_b)?;
    let downstream_profile = profile(gas, &down_inv, Branch::RadialSubsonic, r_b, r1, opts.n_profile)?;
    let exit = downstream_profile.last().expect("profile has at least two rows").state;

    let behind_shock = MachClass::from_excess((jump.downstream.msq - 1.0) * jump.upstream.m1sq, opts.sonic_band);
    let exit_state = MachClass::from_excess(exit.msq - 1.0, opts.sonic_band);
    let downstream_sonic_radius = (jump.downstream.msq > 1.0 && exit.msq < 1.0).then(|| sonic_radius(gas, &down_inv));

    Ok(ShockSolution {
        r0,
        r_b,
        r1,
        p_ex: exit.p,
        upstream_inv: inv,
        downstream_inv: down_inv,
        jump,
        upstream_profile,
        downstream_profile,
        behind_shock,
        exit_state,
        downstream_sonic_radius,
    })
}

/// Exit pressures attainable by a shock inside the annulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureWindow {
    /// Limit as the shock approaches the exit.
    pub p1: f64,
    /// Limit as the shock approaches the inlet.
    pub p0: f64,
    /// Exit pressure of the shock that leaves sonic flow behind it, when
    /// that radius lies inside the annulus.
    pub p_sonic: Option<f64>,
    pub r_sonic_behind: Option<f64>,
}

impl PressureWindow {
    pub fn contains(&self, p_ex: f64) -> bool {
        self.p1 < p_ex && p_ex < self.p0
    }
}

pub fn pressure_window(gas: &GasModel, inlet: &BoundaryState, r1: f64) -> Result<PressureWindow> {
    let inv = outward_inlet(gas, inlet)?;
    let r0 = inlet.r;
    require(r1 > r0, || format!("exit radius {r1} must exceed inlet radius {r0}"))?;
    let p_at = |r_b: f64| exit_density(gas, &inv, r_b, r1).map(|(rho, _)| gas.pressure(rho));
    let p0 = p_at(r0 * (1.0 + WINDOW_OFFSET))?;
    let p1 = p_at(r1 * (1.0 - WINDOW_OFFSET))?;
    let radii = swirl_radii(gas, &inv, r0, r1)?;
    let r_sonic_behind = radii.sonic_behind.filter(|&r| r > r0 && r < r1);
    let p_sonic = r_sonic_behind.map(p_at).transpose()?;
    Ok(PressureWindow { p1, p0, p_sonic, r_sonic_behind })
}

/// Shock position for a prescribed exit pressure.
pub fn shock_from_exit_pressure(
    gas: &GasModel,
    inlet: &BoundaryState,
    r1: f64,
    p_ex: f64,
    opts: ShockOptions,
) -> Result<ShockSolution> {
    require(p_ex.is_finite() && p_ex > 0.0, || format!("exit pressure must be positive, got {p_ex}"))?;
    let window = pressure_window(gas, inlet, r1)?;
    if !window.contains(p_ex) {
        return Err(Error::PressureOutOfWindow { p_ex, p1: window.p1, p0: window.p0 });
    }
    let r_b = locate_shock(gas, inlet, r1, p_ex)?;
    exit_pressure_of_shock(gas, inlet, r_b, r1, opts)
}

/// Bisection on the decreasing map `r_b -> p_ex`.
fn locate_shock(gas: &GasModel, inlet: &BoundaryState, r1: f64, p_ex: f64) -> Result<f64> {
    let inv = outward_inlet(gas, inlet)?;
    let mut lo = inlet.r * (1.0 + WINDOW_OFFSET);
    let mut hi = r1 * (1.0 - WINDOW_OFFSET);
    let excess = |r_b: f64| exit_density(gas, &inv, r_b, r1).map(|(rho, _)| gas.pressure(rho) - p_ex);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = excess(mid)?;
        if f.abs() <= 1e-11 * p_ex || hi - lo <= 1e-12 * r1 {
            return Ok(mid);
        }
        if f > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(format!("shock position for p_ex = {p_ex}")))
}

/// `p_ex ln(p_ex/A) rho - K(r1) rho^2 + m1^2/(2 r1^2)` with `K` built from
/// the Bernoulli value carried by `inv`. Vanishes at the exit density when
/// `p_ex = A rho`.
pub fn exit_density_equation(gas: &GasModel, inv: &Invariants, p_ex: f64, r1: f64, rho: f64) -> f64 {
    p_ex * (p_ex / gas.a()).ln() * rho - inv.reduced_bernoulli(r1) * rho * rho + inv.m1 * inv.m1 / (2.0 * r1 * r1)
}

/// Reference density `exp(K(r0)/A - 1/2)` for comparing an inner circle with
/// the limiting circle of inward flow.
pub fn inward_shock_reference_density(gas: &GasModel, inv: &Invariants, r0: f64) -> f64 {
    (inv.reduced_bernoulli(r0) / gas.a() - 0.5).exp()
}

/// One shock position of a sweep across the annulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub r_b: f64,
    pub p_ex: f64,
    pub behind: MachClass,
    /// Behind-shock class from the jumped state, for comparison with `behind`.
    pub behind_direct: MachClass,
    pub exit: MachClass,
    pub pattern: ShockPattern,
    pub indicator: f64,
    pub bernoulli_jump: f64,
    /// `|M|^2` at the last downstream profile row.
    pub exit_msq: f64,
    /// Sign of the exit density equation at the downstream sonic density.
    pub exit_equation_sign: f64,
    /// Whether the exit density exceeds the downstream sonic density.
    pub exit_density_above_sonic: bool,
    /// `exit_equation_sign < 0` read as a subsonic exit, compared with `exit`.
    pub exit_equation_agrees: bool,
}

/// Shocks at `n` equally spaced radii spanning the window endpoints
/// `r0 (1 + WINDOW_OFFSET)` and `r1 (1 - WINDOW_OFFSET)`. A single shock is
/// placed midway.
pub fn sweep(gas: &GasModel, inlet: &BoundaryState, r1: f64, n: usize, opts: ShockOptions) -> Result<Vec<SweepRow>> {
    require(n >= 1, || "sweep needs at least one shock position".into())?;
    let lo = inlet.r * (1.0 + WINDOW_OFFSET);
    let hi = r1 * (1.0 - WINDOW_OFFSET);
    (0..n)
        .map(|i| {
            let r_b = if n == 1 { 0.5 * (lo + hi) } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
            let sol = exit_pressure_of_shock(gas, inlet, r_b, r1, opts)?;
            Ok(sweep_row(gas, &sol, opts))
        })
        .collect()
}

/// Summary row of a single shock solution.
pub fn sweep_row(gas: &GasModel, sol: &ShockSolution, opts: ShockOptions) -> SweepRow {
    let up = &sol.jump.upstream;
    let exit = sol.exit_state_row();
    let rho_sonic = critical_density(gas, &sol.downstream_inv);
    let eq = exit_density_equation(gas, &sol.downstream_inv, sol.p_ex, sol.r1, rho_sonic);
    let exit_equation_sign = if eq == 0.0 { 0.0 } else { eq.signum() };
    let predicted = if eq < 0.0 { MachClass::Subsonic } else { MachClass::Supersonic };
    SweepRow {
        r_b: sol.r_b,
        p_ex: sol.p_ex,
        behind: MachClass::from_excess(1.0 - behind_shock_indicator(gas, up), opts.sonic_band),
        behind_direct: sol.behind_shock,
        exit: sol.exit_state,
        pattern: sol.pattern(),
        indicator: behind_shock_indicator(gas, up),
        bernoulli_jump: sol.jump.bernoulli_jump,
        exit_msq: exit.msq,
        exit_equation_sign,
        exit_density_above_sonic: exit.rho > rho_sonic,
        exit_equation_agrees: predicted == sol.exit_state,
    }
}

/// `Q_r1` of the downstream invariants at the exit density; zero up to
/// round-off for every constructed solution.
pub fn exit_residual(gas: &GasModel, sol: &ShockSolution) -> f64 {
    let exit = sol.exit_state_row();
    q_residual(gas, &sol.downstream_inv, sol.r1, exit.rho)
}
