//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line in the default test output.

use std::process::ExitCode;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use radflow::radial::{
    classify_inward, classify_outward, critical_density, existence_threshold, limiting_radius, ode_check, profile,
    q_residual, q_scale, rho_star, solve_density, sonic_radius, ClassifyOptions, InwardPattern, OutwardPattern,
};
use radflow::shock::{
    behind_shock_class, behind_shock_class_direct, behind_shock_indicator, bernoulli_jump_closed_form,
    exit_pressure_of_shock, rh_jump, shock_from_exit_pressure, swirl_radii, sweep, MachClass, ShockOptions,
    ShockPattern, SONIC_BAND,
};
use radflow::stability::{
    build_multipliers, coeffs_at, forbidden_w0, inner_boundary_form, multiplier_residuals_refined, sample_coeffs,
    verify_identities, IdentityOptions, MultiplierOptions, REFINED_STEP,
};
use radflow::{
    invariants_from_boundary, state_from_density, BoundaryState, Branch, Error, FlowPattern, FlowState, GasModel,
    Invariants,
};

/// Plain bisection oracles, independent of the library's solvers.
mod oracle {
    pub fn q(a: f64, m1: f64, m2: f64, b: f64, r: f64, rho: f64) -> f64 {
        a * rho * rho * rho.ln() - (b - m2 * m2 / (2.0 * r * r)) * rho * rho + m1 * m1 / (2.0 * r * r)
    }

    pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let f_lo = f(lo);
        assert!(f_lo * f(hi) <= 0.0, "oracle bracket [{lo}, {hi}] has no sign change");
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (f_lo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn density(a: f64, m1: f64, m2: f64, b: f64, r: f64, supersonic: bool) -> f64 {
        let min = ((b - m2 * m2 / (2.0 * r * r)) / a - 0.5).exp();
        let f = |rho: f64| q(a, m1, m2, b, r, rho);
        if supersonic {
            let mut lo = min;
            while f(lo) <= 0.0 {
                lo *= 0.5;
            }
            bisect(f, lo, min)
        } else {
            bisect(f, min, (b / a).exp() + 1.0)
        }
    }

    pub struct Shock {
        pub rho_minus: f64,
        pub msq_plus: f64,
        pub p_ex: f64,
        pub exit_msq: f64,
        pub sonic_radius: f64,
        pub indicator: f64,
    }

    pub fn shock(a: f64, inlet: (f64, f64, f64, f64), r_b: f64, r1: f64) -> Shock {
        let (r0, rho0, u10, u20) = inlet;
        let (m1, m2) = (r0 * rho0 * u10, r0 * u20);
        let b = 0.5 * (u10 * u10 + u20 * u20) + a * rho0.ln();
        let rho_minus = density(a, m1, m2, b, r_b, true);
        let u1 = m1 / (r_b * rho_minus);
        let u2 = m2 / r_b;
        let (u1p, rhop) = (a / u1, rho_minus * u1 * u1 / a);
        let b_plus = 0.5 * (u1p * u1p + u2 * u2) + a * rhop.ln();
        let rho_exit = density(a, m1, m2, b_plus, r1, false);
        let exit_u1 = m1 / (r1 * rho_exit);
        let exit_u2 = m2 / r1;
        let rho_s = (b_plus / a - 0.5).exp();
        Shock {
            rho_minus,
            msq_plus: (u1p * u1p + u2 * u2) / a,
            p_ex: a * rho_exit,
            exit_msq: (exit_u1 * exit_u1 + exit_u2 * exit_u2) / a,
            sonic_radius: ((m1 * m1 + m2 * m2 * rho_s * rho_s) / (a * rho_s * rho_s)).sqrt(),
            indicator: (a - u2 * u2) / a * u1 * u1 / a,
        }
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self { id, title, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> bool {
        let ok = self.failures.is_empty();
        let verdict = if ok { "PASS" } else { "FAIL" };
        let detail = if ok { self.notes.join("; ") } else { self.failures.join("; ") };
        println!("criterion {:>2} [{verdict}] {}: {detail}", self.id, self.title);
        ok
    }
}

fn unit() -> GasModel {
    GasModel::new(1.0).unwrap()
}

const S3_DATA: BoundaryState = BoundaryState { r: 2.0, rho: 1.0, u1: -0.5, u2: 0.5 };
const SWIRL_INLET: BoundaryState = BoundaryState { r: 1.0, rho: 1.0, u1: 1.2, u2: 1.5 };

fn s3() -> Invariants {
    invariants_from_boundary(&unit(), &S3_DATA).unwrap()
}

fn sonic_consistency() -> bool {
    let mut c = Criterion::new(1, "sonic closed-form consistency");
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let (mut worst_msq, mut worst_q) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let a = rng.gen_range(0.5..2.0);
        let gas = GasModel::new(a).unwrap();
        let m1sq = rng.gen_range(0.05..0.95);
        let msq = rng.gen_range(1.0f64.max(m1sq) + 1e-3..2.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let u1 = sign * (a * m1sq).sqrt();
        let u2 = (a * (msq - m1sq)).sqrt();
        let data = BoundaryState::new(rng.gen_range(0.5..2.0), rng.gen_range(0.2..5.0), u1, u2);
        let inv = invariants_from_boundary(&gas, &data).unwrap();
        let (r_s, rho_s) = (sonic_radius(&gas, &inv), critical_density(&gas, &inv));
        let s = state_from_density(&gas, &inv, r_s, rho_s).unwrap();
        worst_msq = worst_msq.max((s.msq - 1.0).abs());
        worst_q = worst_q.max(q_residual(&gas, &inv, r_s, rho_s).abs() / q_scale(&gas, &inv, r_s));
    }
    c.check(worst_msq <= 1e-8, format!("max ||M|^2 - 1| = {worst_msq:e}"));
    c.check(worst_q <= 1e-10, format!("max scaled residual = {worst_q:e}"));
    c.note(format!("100 sets, max ||M|^2-1| = {worst_msq:.1e}, max |Q|/scale = {worst_q:.1e}"));
    c.finish()
}

fn branch_structure() -> bool {
    let mut c = Criterion::new(2, "branch structure");
    let gas = unit();
    let inv = s3();
    let r_limit = limiting_radius(&gas, &inv, 2.0).unwrap();
    let oracle_limit = oracle::bisect(|r| 2.0 * r.ln() - 1.0 / (r * r) - 0.5, 1.2, 2.0);
    let r_threshold = existence_threshold(&inv).unwrap();

    c.check((r_threshold - 2f64.sqrt()).abs() <= 1e-9, format!("threshold {r_threshold}"));
    c.check((r_limit - 1.5728).abs() <= 1e-3, format!("limiting radius {r_limit}"));
    c.check((r_limit - oracle_limit).abs() <= 1e-10, format!("limiting radius {r_limit} vs oracle {oracle_limit}"));

    for i in 1..40 {
        let r = r_limit + (2.0 - r_limit) * i as f64 / 40.0;
        let star = rho_star(&gas, &inv, r);
        let sup = solve_density(&gas, &inv, r, Branch::RadialSupersonic);
        let sub = solve_density(&gas, &inv, r, Branch::RadialSubsonic);
        match (sup, sub) {
            (Ok(lo), Ok(hi)) => {
                let m1sq = |rho: f64| state_from_density(&gas, &inv, r, rho).unwrap().m1sq;
                c.check(lo < star && star < hi, format!("roots do not straddle at r = {r}"));
                c.check(m1sq(lo) > 1.0 && m1sq(hi) < 1.0, format!("branch Mach signs at r = {r}"));
            }
            _ => c.check(false, format!("missing root at r = {r}")),
        }
        let r = r_threshold + (r_limit - r_threshold) * i as f64 / 40.0;
        for branch in [Branch::RadialSupersonic, Branch::RadialSubsonic] {
            let res = solve_density(&gas, &inv, r, branch);
            c.check(matches!(res, Err(Error::NoRoot { .. })), format!("unexpected root at r = {r}"));
        }
    }
    let r = r_limit * (1.0 + 1e-6);
    let gap = solve_density(&gas, &inv, r, Branch::RadialSubsonic).unwrap()
        - solve_density(&gas, &inv, r, Branch::RadialSupersonic).unwrap();
    let star = rho_star(&gas, &inv, r);
    c.check(gap <= 1e-2 * star, format!("gap {gap} at r_limit(1+1e-6)"));
    c.note(format!("threshold = {r_threshold:.12}, limiting radius = {r_limit:.7}, gap/rho* = {:.1e}", gap / star));
    c.finish()
}

fn classification_table() -> bool {
    let mut c = Criterion::new(3, "classification table");
    let gas = unit();
    let opts = ClassifyOptions::default();
    let outward = |rho, u1, u2| classify_outward(&gas, &BoundaryState::new(1.0, rho, u1, u2), 2.0, opts).unwrap();
    let inward = |r0| classify_inward(&gas, &S3_DATA, r0, opts).unwrap();

    let s1 = outward(1.0, 2.0, 1.0);
    c.check(s1 == FlowPattern::Outward(OutwardPattern::Supersonic), format!("S1 {s1}"));
    match outward(1.0, 0.8, 0.9) {
        FlowPattern::Outward(OutwardPattern::TransonicAccelerating { r_sonic }) => {
            c.check((r_sonic - 1.10367).abs() <= 1e-4, format!("S2 sonic radius {r_sonic}"))
        }
        other => c.check(false, format!("S2 {other}")),
    }
    match inward(1.0) {
        FlowPattern::Inward(InwardPattern::NoGlobalSolution { r_limit }) => {
            c.check((r_limit - 1.5728).abs() <= 1e-3, format!("S3 limiting radius {r_limit}"))
        }
        other => c.check(false, format!("S3 {other}")),
    }
    match inward(1.58) {
        FlowPattern::Inward(InwardPattern::TransonicDecelerating { r_sonic }) => {
            c.check((r_sonic - 1.6275).abs() <= 1e-3, format!("S4 sonic radius {r_sonic}"))
        }
        other => c.check(false, format!("S4 {other}")),
    }
    let s5 = inward(1.70);
    c.check(s5 == FlowPattern::Inward(InwardPattern::Subsonic), format!("S3 with r0 = 1.70: {s5}"));
    let s6 = outward(1.0, 0.3, 0.4);
    c.check(s6 == FlowPattern::Outward(OutwardPattern::Subsonic), format!("S1 variant {s6}"));
    c.note("six scenarios reproduce their tags");
    c.finish()
}

fn ode_equivalence() -> bool {
    let mut c = Criterion::new(4, "ODE/algebra equivalence");
    let gas = unit();
    let inv = Invariants::new(0.8, 0.9, 0.725);
    let report = |n| ode_check(&gas, &profile(&gas, &inv, Branch::RadialSubsonic, 1.0, 2.0, n).unwrap()).unwrap();
    let (coarse, fine) = (report(2001), report(4001));
    let pairs = [
        ("rho", coarse.fd_residuals.rho, fine.fd_residuals.rho),
        ("U1", coarse.fd_residuals.u1, fine.fd_residuals.u1),
        ("U2", coarse.fd_residuals.u2, fine.fd_residuals.u2),
        ("M1^2", coarse.fd_residuals.m1sq, fine.fd_residuals.m1sq),
        ("M2^2", coarse.fd_residuals.m2sq, fine.fd_residuals.m2sq),
        ("|M|^2", coarse.fd_residuals.msq, fine.fd_residuals.msq),
    ];
    let mut worst = f64::INFINITY;
    for (name, a, b) in pairs {
        let ratio = a / b;
        worst = worst.min(ratio);
        c.check(ratio >= 3.5, format!("{name} residual ratio {ratio:.3}"));
    }
    c.check(coarse.integration_deviation <= 1e-8, format!("RK4 deviation {:e}", coarse.integration_deviation));
    c.note(format!(
        "smallest halving ratio {worst:.3}, RK4 deviation {:.1e} at n = 2001",
        coarse.integration_deviation
    ));
    c.finish()
}

fn jump_exactness() -> bool {
    let mut c = Criterion::new(5, "shock jump exactness");
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let (mut worst_res, mut worst_b) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let gas = GasModel::new(rng.gen_range(0.5..2.0)).unwrap();
        let cs = gas.sound_speed();
        let u1 = cs * rng.gen_range(1.0001..6.0);
        let s = FlowState::from_primitive(&gas, rng.gen_range(0.5..3.0), rng.gen_range(0.05..10.0), u1, rng.gen_range(-3.0..3.0));
        let j = rh_jump(&gas, &s).unwrap();
        worst_res = worst_res.max(j.residuals().max());
        c.check(j.pressure_jump > 0.0, "non-positive pressure jump");
        c.check(j.downstream.u2 == s.u2, "swirl speed changed across the front");
        let direct = gas.bernoulli(j.downstream.rho, j.downstream.u1, j.downstream.u2) - gas.bernoulli(s.rho, s.u1, s.u2);
        let closed = bernoulli_jump_closed_form(&gas, u1);
        let m = u1 / cs;
        let textbook = gas.a() * (0.5 * (1.0 / (m * m) - m * m) + 2.0 * m.ln());
        worst_b = worst_b.max((direct - closed).abs()).max((textbook - j.bernoulli_jump).abs());
    }
    c.check(worst_res <= 1e-12, format!("max relative jump residual {worst_res:e}"));
    c.check(worst_b <= 1e-12, format!("max Bernoulli jump mismatch {worst_b:e}"));
    c.note(format!("1000 states, max residual {worst_res:.1e}, max [B] mismatch {worst_b:.1e}"));
    c.finish()
}

/// Independent oracle values for the shock at `r_b = 1.5` in the swirl inlet
/// scenario (nested bisection on the density equation, frozen).
const FROZEN_PEX: f64 = 2.317_612_4;
const FROZEN_MSQ_BEHIND: f64 = 1.213_699_3;
const FROZEN_SONIC_RADIUS: f64 = 1.624_287_2;

fn monotone_shock_map() -> bool {
    let mut c = Criterion::new(6, "monotone shock map");
    let gas = unit();
    let opts = ShockOptions::default();
    let rows = sweep(&gas, &SWIRL_INLET, 2.0, 50, opts).unwrap();
    c.check(rows.len() == 50, "sweep length");
    c.check(rows.windows(2).all(|w| w[1].p_ex < w[0].p_ex), "exit pressure not strictly decreasing");

    let mut worst = 0.0f64;
    for row in &rows[1..rows.len() - 1] {
        let back = shock_from_exit_pressure(&gas, &SWIRL_INLET, 2.0, row.p_ex, opts).unwrap();
        worst = worst.max((back.r_b - row.r_b).abs());
    }
    c.check(worst <= 1e-8, format!("round-trip error {worst:e}"));

    let sol = exit_pressure_of_shock(&gas, &SWIRL_INLET, 1.5, 2.0, opts).unwrap();
    let o = oracle::shock(1.0, (1.0, 1.0, 1.2, 1.5), 1.5, 2.0);
    c.check((o.p_ex - FROZEN_PEX).abs() < 1e-6, format!("oracle drift p_ex {}", o.p_ex));
    c.check((o.msq_plus - FROZEN_MSQ_BEHIND).abs() < 1e-6, format!("oracle drift |M+|^2 {}", o.msq_plus));
    c.check((o.sonic_radius - FROZEN_SONIC_RADIUS).abs() < 1e-6, format!("oracle drift sonic {}", o.sonic_radius));
    c.check((sol.jump.upstream.rho - o.rho_minus).abs() < 1e-12, "upstream density differs from oracle");
    c.check((sol.p_ex - FROZEN_PEX).abs() <= 0.01, format!("p_ex {}", sol.p_ex));
    c.check((sol.jump.downstream.msq - FROZEN_MSQ_BEHIND).abs() <= 0.005, format!("|M+|^2 {}", sol.jump.downstream.msq));
    match sol.downstream_sonic_radius {
        Some(r) => c.check((r - FROZEN_SONIC_RADIUS).abs() <= 0.005, format!("downstream sonic radius {r}")),
        None => c.check(false, "no downstream sonic radius"),
    }
    // the tabulated figures 1.670, 1.533, 1.7186 rest on rho- = 0.5839, which is not a root
    let tabulated_q = oracle::q(1.0, 1.2, 1.5, 1.845, 1.5, 0.5839);
    c.check(tabulated_q.abs() > 1e-2, "tabulated upstream density became a root");
    c.note(format!("tabulated rho- = 0.5839 leaves Q = {tabulated_q:.4}, true rho- = {:.9}", o.rho_minus));
    c.note(format!(
        "50 decreasing p_ex, round trip {worst:.1e}; r_b = 1.5: p_ex = {:.6}, |M+|^2 = {:.6}, sonic = {:.6}",
        sol.p_ex,
        sol.jump.downstream.msq,
        sol.downstream_sonic_radius.unwrap_or(f64::NAN)
    ));
    c.finish()
}

fn taxonomy_consistency() -> bool {
    let mut c = Criterion::new(7, "taxonomy consistency");
    let gas = unit();
    let opts = ShockOptions::default();
    let rows = sweep(&gas, &SWIRL_INLET, 2.0, 50, opts).unwrap();
    for row in &rows {
        c.check(row.behind == row.behind_direct, format!("indicator and jump disagree at r_b = {}", row.r_b));
        let up = exit_pressure_of_shock(&gas, &SWIRL_INLET, row.r_b, 2.0, opts).unwrap().jump.upstream;
        let a = behind_shock_class(&gas, &up, SONIC_BAND).unwrap();
        let b = behind_shock_class_direct(&gas, &up, SONIC_BAND).unwrap();
        c.check(a == b, format!("class mismatch at r_b = {}", row.r_b));
    }
    let first_sub = rows.iter().position(|r| r.pattern == ShockPattern::SupSub);
    match first_sub {
        Some(k) => {
            c.check(rows[..k].iter().all(|r| r.pattern.is_supersonic_behind()), "SupSup rows after SupSub");
            c.check(rows[k..].iter().all(|r| r.pattern == ShockPattern::SupSub), "non-SupSub row past the crossing");
        }
        None => c.check(false, "no SupSub row"),
    }

    let o_cross = oracle::bisect(|r| oracle::shock(1.0, (1.0, 1.0, 1.2, 1.5), r, 2.0).indicator - 1.0, 1.5, 2.0);
    let inv = invariants_from_boundary(&gas, &SWIRL_INLET).unwrap();
    let r_cross = swirl_radii(&gas, &inv, 1.0, 2.0).unwrap().sonic_behind.unwrap_or(f64::NAN);
    c.check((r_cross - o_cross).abs() <= 1e-6, format!("crossing {r_cross} vs oracle {o_cross}"));
    let at = exit_pressure_of_shock(&gas, &SWIRL_INLET, r_cross, 2.0, opts).unwrap();
    c.check(at.behind_shock == MachClass::Sonic, format!("behind class at crossing {}", at.behind_shock));
    c.check(at.pattern() == ShockPattern::SupSonicShockOnSonicCircle, format!("tag at crossing {}", at.pattern()));
    let indicator = behind_shock_indicator(&gas, &at.jump.upstream);
    c.check((indicator - 1.0).abs() <= 1e-9, format!("indicator at crossing {indicator}"));

    let plain = BoundaryState::new(1.0, 1.0, 1.2, 0.0);
    let zero = sweep(&gas, &plain, 2.0, 50, opts).unwrap();
    c.check(zero.iter().all(|r| r.pattern == ShockPattern::SupSub), "zero-swirl inlet produced a non-SupSub row");
    c.note(format!(
        "50/50 rows agree, SupSup -> SupSub at r_b > {r_cross:.9} (oracle {o_cross:.9}), sonic tag on the crossing, zero swirl all SupSub"
    ));
    c.finish()
}

fn exit_state_dual_oracle() -> bool {
    let mut c = Criterion::new(8, "exit-state dual oracle");
    let gas = unit();
    let opts = ShockOptions::default();
    let rows = sweep(&gas, &SWIRL_INLET, 2.0, 50, opts).unwrap();
    let mut matches = 0;
    let mut equation_agrees = 0;
    let mut density_agrees = 0;
    for row in &rows {
        let sol = exit_pressure_of_shock(&gas, &SWIRL_INLET, row.r_b, 2.0, opts).unwrap();
        let terminal = sol.downstream_profile.last().unwrap().state.msq;
        let terminal_class = MachClass::from_excess(terminal - 1.0, SONIC_BAND);
        let o = oracle::shock(1.0, (1.0, 1.0, 1.2, 1.5), row.r_b, 2.0);
        let oracle_class = MachClass::from_excess(o.exit_msq - 1.0, SONIC_BAND);
        if row.exit == terminal_class && row.exit == oracle_class {
            matches += 1;
        }
        equation_agrees += row.exit_equation_agrees as usize;
        density_agrees += (row.exit_density_above_sonic == (row.exit == MachClass::Subsonic)) as usize;
    }
    c.check(matches == 50, format!("{matches}/50 rows match the terminal profile state"));
    c.note(format!(
        "{matches}/50 direct exit classes match the terminal profile; exit-density-equation sign agrees in {equation_agrees}/50 (reported only); density vs sonic density agrees in {density_agrees}/50"
    ));
    c.finish()
}

fn identities() -> bool {
    let mut c = Criterion::new(9, "coefficient identities");
    let gas = unit();
    let grid: Vec<f64> = (0..200).map(|i| 1.58 + 0.42 * i as f64 / 199.0).collect();
    let rep = verify_identities(&gas, &s3(), &grid, IdentityOptions::default()).unwrap();
    let ratio = rep.fd_residual / rep.fd_residual_half;
    c.check(rep.max_mixed <= 1e-10, format!("max |mixed| = {:e}", rep.max_mixed));
    c.check(rep.richardson_residual <= 1e-6, format!("identity residual {:e}", rep.richardson_residual));
    c.check((3.5..=4.5).contains(&ratio), format!("halving ratio {ratio}"));
    c.note(format!(
        "max |mixed| = {:.1e}, identity residual = {:.1e}, halving ratio = {ratio:.3}, closed-form slope residual = {:.1e}",
        rep.max_mixed, rep.richardson_residual, rep.analytic_residual
    ));
    c.finish()
}

/// Forbidden window from an oracle state at r0 = 1.58 (frozen).
const FROZEN_WINDOW: (f64, f64) = (-6.712_368, -0.559_614);

fn multiplier_coercivity() -> bool {
    let mut c = Criterion::new(10, "multiplier coercivity");
    let gas = unit();
    let inv = s3();
    let (r0, r1) = (1.58, 2.0);
    let pair = build_multipliers(&gas, &inv, r0, r1, MultiplierOptions { w0: 0.0, decay: 0.1, n: 400 }).unwrap();
    let coeffs = sample_coeffs(&gas, &inv, &pair.grid).unwrap();
    let res = multiplier_residuals_refined(&pair, &coeffs, REFINED_STEP).unwrap();
    let w1_min = pair.w1.iter().copied().fold(f64::INFINITY, f64::min);
    c.check(w1_min > 0.0, format!("min w1 = {w1_min}"));
    c.check(res.w1 <= 1e-6 && res.w2 <= 1e-6, format!("equation residuals {:e}, {:e}", res.w1, res.w2));
    c.check(pair.coercivity > 0.0, format!("coercivity {}", pair.coercivity));
    c.check(pair.boundary_r0 > 0.0 && pair.boundary_r1 > 0.0, format!("boundary forms {} {}", pair.boundary_r0, pair.boundary_r1));

    let rho = oracle::density(1.0, inv.m1, inv.m2, inv.b, r0, false);
    let (m1, m2) = (inv.m1 / (r0 * rho), inv.m2 / r0);
    let msq = m1 * m1 + m2 * m2;
    let o_lo = (m1 * m2 - (msq - 1.0).sqrt()) / (1.0 - m1 * m1);
    let o_hi = (m1 * m2 + (msq - 1.0).sqrt()) / (1.0 - m1 * m1);
    c.check((o_lo - FROZEN_WINDOW.0).abs() < 1e-6 && (o_hi - FROZEN_WINDOW.1).abs() < 1e-6, "oracle window drift");
    c.note(format!("oracle |M|^2(r0) = {msq:.6}, tabulated 1.257 and window (-7.598, -0.549) do not match it"));
    let w = forbidden_w0(&gas, &inv, r0).unwrap();
    c.check((w.lo - FROZEN_WINDOW.0).abs() <= 1e-3 && (w.hi - FROZEN_WINDOW.1).abs() <= 1e-3, format!("window {w}"));
    c.check(w.contains(-4.0), "w0 = -4 outside the window");
    let inner = coeffs_at(&gas, &inv, r0).unwrap();
    let form = inner_boundary_form(&inner, -4.0);
    c.check(form < 0.0, format!("inner boundary form at w0 = -4 is {form}"));
    let rejected = build_multipliers(&gas, &inv, r0, r1, MultiplierOptions { w0: -4.0, decay: 0.1, n: 400 });
    c.check(matches!(rejected, Err(Error::W0Forbidden { .. })), "w0 = -4 was not rejected");
    c.note(format!(
        "min w1 = {w1_min:.4}, residuals {:.1e}/{:.1e}, coercivity = {:.4}, boundary forms {:.4}/{:.4}, window {w}, w0 = -4 form {form:.4} rejected",
        res.w1, res.w2, pair.coercivity, pair.boundary_r0, pair.boundary_r1
    ));
    c.finish()
}

fn main() -> ExitCode {
    let results = [
        sonic_consistency(),
        branch_structure(),
        classification_table(),
        ode_equivalence(),
        jump_exactness(),
        monotone_shock_map(),
        taxonomy_consistency(),
        exit_state_dual_oracle(),
        identities(),
        multiplier_coercivity(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
