use std::path::PathBuf;

use radflow::radial::{classify_inward, classify_outward, critical_radii, profile as radial_profile, ClassifyOptions};
use radflow::shock::{
    exit_pressure_of_shock, exit_residual, pressure_window, shock_from_exit_pressure, swirl_radii, sweep as shock_sweep,
    ShockOptions, ShockSolution,
};
use radflow::stability::{
    background_admissible, build_multipliers, forbidden_w0, multiplier_residuals, multiplier_residuals_refined,
    sample_coeffs, verify_identities, IdentityOptions, MultiplierOptions, REFINED_STEP,
};
use radflow::{invariants_from_boundary, BoundaryState, Branch, Error, FlowPattern, FlowState, GasModel, Invariants};

use crate::report::{emit, num, profile_csv, CliError, RunReport, EXIT_NO_SOLUTION, EXIT_OK};
use crate::scenario::{Direction, Format, Scenario};

const IDENTITY_POINTS: usize = 200;

struct Setup {
    gas: GasModel,
    data: BoundaryState,
    inv: Invariants,
}

fn setup(s: &Scenario) -> Result<Setup, CliError> {
    let gas = GasModel::new(s.a)?;
    let data = BoundaryState::new(s.inflow_radius(), s.rho, s.u1, s.u2);
    let inv = invariants_from_boundary(&gas, &data)?;
    Ok(Setup { gas, data, inv })
}

fn flow_pattern(s: &Scenario, st: &Setup) -> Result<FlowPattern, CliError> {
    let opts = ClassifyOptions { rtol: s.tol };
    Ok(match s.direction {
        Direction::Outward => classify_outward(&st.gas, &st.data, s.r1, opts)?,
        Direction::Inward => classify_inward(&st.gas, &st.data, s.r0, opts)?,
    })
}

fn pattern_report(s: &Scenario, st: &Setup, pattern: &FlowPattern) -> RunReport {
    let mut report = RunReport::new(s);
    report.tag("flow", pattern.name());
    report.tag("summary", pattern);
    let radii = critical_radii(&st.gas, &st.inv, st.data.r);
    if let Some(r) = radii.r_sonic {
        report.radius("sonic", r);
    }
    if let Some(r) = pattern.limiting_radius().or(radii.r_limit) {
        report.radius("limiting", r);
    }
    if let Some(r) = radii.r_threshold {
        report.radius("existence_threshold", r);
    }
    if !pattern.has_global_solution() {
        report.fail(EXIT_NO_SOLUTION, format!("no smooth solution on [{}, {}]", s.r0, s.r1));
    }
    report
}

fn finish(s: &Scenario, report: &RunReport) -> i32 {
    print!("{}", report.render(s.format));
    report.status.code
}

pub fn classify(s: &Scenario) -> Result<i32, CliError> {
    let st = setup(s)?;
    let pattern = flow_pattern(s, &st)?;
    Ok(finish(s, &pattern_report(s, &st, &pattern)))
}

pub fn profile(s: &Scenario) -> Result<i32, CliError> {
    let n = s.extras.n.unwrap_or(101);
    if n < 2 {
        return Err(CliError::input(format!("--n must be at least 2, got {n}")));
    }
    let st = setup(s)?;
    let pattern = flow_pattern(s, &st)?;
    if !pattern.has_global_solution() {
        let report = pattern_report(s, &st, &pattern);
        eprintln!("{}", report.status.message);
        return Ok(finish(s, &report));
    }
    let branch = Branch::from_m1sq(FlowState::from_primitive(&st.gas, st.data.r, s.rho, s.u1, s.u2).m1sq);
    let rows = radial_profile(&st.gas, &st.inv, branch, s.r0, s.r1, n)?;
    let text = match s.format {
        Format::Csv => profile_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    emit(s.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn require_outward(s: &Scenario) -> Result<(), CliError> {
    if s.direction != Direction::Outward {
        return Err(CliError::input("shock analysis needs outward flow (u1 > 0)"));
    }
    Ok(())
}

fn shock_options(s: &Scenario) -> ShockOptions {
    ShockOptions { n_profile: s.extras.n.unwrap_or(101).max(2), sonic_band: s.tol }
}

fn suffixed(out: &std::path::Path, suffix: &str) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn shock(s: &Scenario) -> Result<i32, CliError> {
    require_outward(s)?;
    let st = setup(s)?;
    let opts = shock_options(s);
    let sol: ShockSolution = match (s.extras.pex, s.extras.rb) {
        (Some(p), None) => shock_from_exit_pressure(&st.gas, &st.data, s.r1, p, opts)?,
        (None, Some(rb)) => exit_pressure_of_shock(&st.gas, &st.data, rb, s.r1, opts)?,
        _ => return Err(CliError::input("exactly one of --pex and --rb is required")),
    };
    let window = pressure_window(&st.gas, &st.data, s.r1)?;
    let radii = swirl_radii(&st.gas, &st.inv, s.r0, s.r1)?;

    let mut report = RunReport::new(s);
    report.tag("behind_shock", sol.behind_shock);
    report.tag("exit_state", sol.exit_state);
    report.tag("taxonomy", sol.pattern());
    report.radius("shock", sol.r_b);
    if let Some(r) = sol.downstream_sonic_radius {
        report.radius("downstream_sonic", r);
    }
    report.radius("swirl_sonic", radii.swirl_sonic);
    if let Some(r) = radii.sonic_behind {
        report.radius("sonic_behind_shock", r);
    }
    report.window.insert("p_ex", sol.p_ex);
    report.window.insert("p0", window.p0);
    report.window.insert("p1", window.p1);
    if let Some(p) = window.p_sonic {
        report.window.insert("p_sonic", p);
    }
    report.residuals.insert("bernoulli_jump", sol.jump.bernoulli_jump);
    report.residuals.insert("pressure_jump", sol.jump.pressure_jump);
    report.residuals.insert("jump_conservation", sol.jump.residuals().max());
    report.residuals.insert("exit_density_equation", exit_residual(&st.gas, &sol));

    if let Some(out) = &s.out {
        emit(Some(&suffixed(out, "_upstream.csv")), &profile_csv(&sol.upstream_profile))?;
        emit(Some(&suffixed(out, "_downstream.csv")), &profile_csv(&sol.downstream_profile))?;
    }
    Ok(finish(s, &report))
}

pub fn sweep(s: &Scenario) -> Result<i32, CliError> {
    require_outward(s)?;
    let n = s.extras.n.unwrap_or(50);
    if n < 1 {
        return Err(CliError::input("--n must be at least 1"));
    }
    let st = setup(s)?;
    let rows = shock_sweep(&st.gas, &st.data, s.r1, n, shock_options(s))?;
    let text = match s.format {
        Format::Csv => {
            let mut t = String::from("rb,pex,behind,exit,taxonomy\n");
            for r in &rows {
                t.push_str(&format!("{},{},{},{},{}\n", num(r.r_b), num(r.p_ex), r.behind, r.exit, r.pattern));
            }
            t
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    emit(s.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

pub fn stability(s: &Scenario) -> Result<i32, CliError> {
    if s.direction != Direction::Inward {
        return Err(CliError::input("stability analysis needs inward flow (u1 < 0)"));
    }
    let st = setup(s)?;
    let mut report = RunReport::new(s);
    let admissible = background_admissible(&st.gas, &st.inv, s.r0, s.r1)?;
    if let Some(m) = admissible.msq_r0 {
        report.residuals.insert("msq_r0", m);
    }
    if !admissible.admissible {
        let reason = admissible.reason.unwrap_or_default();
        if let Some(r) = admissible.offending_radius {
            report.radius("offending", r);
        }
        eprintln!("background is not admissible: {reason}");
        report.fail(EXIT_NO_SOLUTION, reason);
        return Ok(finish(s, &report));
    }
    report.tag("background", "admissible");

    let grid: Vec<f64> = (0..IDENTITY_POINTS)
        .map(|i| s.r0 + (s.r1 - s.r0) * i as f64 / (IDENTITY_POINTS - 1) as f64)
        .collect();
    let ids = verify_identities(&st.gas, &st.inv, &grid, IdentityOptions::default())?;
    report.residuals.insert("mixed_coefficient", ids.max_mixed);
    report.residuals.insert("coercivity_identity", ids.richardson_residual);
    report.residuals.insert("coercivity_identity_analytic", ids.analytic_residual);

    let window = forbidden_w0(&st.gas, &st.inv, s.r0)?;
    report.window.insert("w0_lo", window.lo);
    report.window.insert("w0_hi", window.hi);

    let opts = MultiplierOptions {
        w0: s.extras.w0.unwrap_or(0.0),
        decay: s.extras.sigma1.unwrap_or(0.1),
        n: s.extras.n.unwrap_or(400),
    };
    report.window.insert("w0", opts.w0);
    let pair = match build_multipliers(&st.gas, &st.inv, s.r0, s.r1, opts) {
        Ok(pair) => pair,
        Err(e @ Error::InvalidInput(_)) => return Err(e.into()),
        Err(e) => {
            let err = CliError::from(e);
            eprintln!("{}", err.message);
            report.fail(err.code, err.message);
            return Ok(finish(s, &report));
        }
    };
    let coeffs = sample_coeffs(&st.gas, &st.inv, &pair.grid)?;
    let grid_res = multiplier_residuals(&pair, &coeffs)?;
    let refined = multiplier_residuals_refined(&pair, &coeffs, REFINED_STEP)?;
    let w1_min = pair.w1.iter().copied().fold(f64::INFINITY, f64::min);
    for (k, v) in [
        ("sigma1", pair.decay),
        ("sigma2", pair.angular_rate),
        ("sigma3", pair.coercivity),
        ("sigma_star", pair.energy_constant),
        ("boundary_r0", pair.boundary_r0),
        ("boundary_r1", pair.boundary_r1),
        ("w1_min", w1_min),
        ("w1_equation", refined.w1),
        ("w2_equation", refined.w2),
        ("w1_equation_grid", grid_res.w1),
        ("w2_equation_grid", grid_res.w2),
    ] {
        report.residuals.insert(k, v);
    }
    let positive = w1_min > 0.0 && pair.coercivity > 0.0 && pair.boundary_r0 > 0.0 && pair.boundary_r1 > 0.0;
    if !positive {
        report.fail(EXIT_NO_SOLUTION, "a positivity check failed");
    }
    Ok(finish(s, &report))
}
