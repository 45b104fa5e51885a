//! The subcommands of `lpd`, each producing one table.

use crate::checks::run_checks;
use crate::config::{InitialData, RunConfig};
use crate::error::{SimError, SimResult};
use crate::evolve::{evolve, smoothed_step, FieldGrid};
use crate::output::{Cell, Table};
use crate::residual::{pde_residual, ExactSoliton};
use lpd_asymptotics::{AsymError, AsymptoticOptions, Order, RayAsymptotics};
use lpd_numerics_core::{Complex64, Mat2, Side};
use lpd_pc_model::SaddleSet;
use lpd_phase::{sector_probes, sign_of_re_phi, stationary_points, PhaseGeometry, EDGE_GUARD};
use lpd_rh_factors::DeltaFunction;
use serde_json::{json, Value};

type C = Complex64;

/// Subcommands that produce tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Scatter,
    Phase,
    Delta,
    PcModel,
    Asymptote,
    Soliton,
    Simulate,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Scatter => "scatter",
            Command::Phase => "phase",
            Command::Delta => "delta",
            Command::PcModel => "pcmodel",
            Command::Asymptote => "asymptote",
            Command::Soliton => "soliton",
            Command::Simulate => "simulate",
            Command::Validate => "validate",
        }
    }
}

/// A finished table and whether every check it reports passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub passed: bool,
}

fn cpair(z: C) -> [Cell; 2] {
    [Cell::Float(z.re), Cell::Float(z.im)]
}

fn cjson(z: C) -> Value {
    json!([z.re, z.im])
}

fn meta(cfg: &RunConfig, command: Command, extra: Value) -> Value {
    let mut m = json!({
        "command": command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "profile": cfg.profile,
        "source": cfg.source,
        "kappa": cfg.kappa,
        "mode": cfg.mode,
        "case": cfg.case,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

fn headers(prefix: &[&str], complex: &[&str]) -> Vec<String> {
    let mut h: Vec<String> = prefix.iter().map(|s| s.to_string()).collect();
    for c in complex {
        h.push(format!("re_{c}"));
        h.push(format!("im_{c}"));
    }
    h
}

fn table(meta: Value, header: Vec<String>) -> Table {
    Table { meta, header, rows: Vec::new() }
}

/// Runs one subcommand.
pub fn run(command: Command, cfg: &RunConfig) -> SimResult<Report> {
    let table = match command {
        Command::Scatter => scatter(cfg)?,
        Command::Phase => phase(cfg)?,
        Command::Delta => delta(cfg)?,
        Command::PcModel => pcmodel(cfg)?,
        Command::Asymptote => asymptote(cfg)?,
        Command::Soliton => soliton(cfg)?,
        Command::Simulate => simulate(cfg)?,
        Command::Validate => return validate(cfg),
    };
    Ok(Report { table, passed: true })
}

fn scatter(cfg: &RunConfig) -> SimResult<Table> {
    let data = cfg.scattering_data()?;
    let m = meta(
        cfg,
        Command::Scatter,
        json!({"detected_case": data.case.to_string(), "xi1": data.xi1, "a1_dot_xi1": cjson(data.a1_dot_xi1)}),
    );
    let mut t = table(m, headers(&["xi"], &["a1", "a2", "b", "r1", "r2"]));
    for xi in cfg.scatter.xi.values()? {
        let z = C::new(xi, 0.0);
        let s = data.source.matrix(z)?;
        let (r1, r2) = data.reflection_coefficients(z)?;
        let mut row = vec![Cell::Float(xi)];
        for v in [s.a11(), s.a22(), s.a12(), r1, r2] {
            row.extend(cpair(v));
        }
        t.push(row)?;
    }
    Ok(t)
}

fn phase(cfg: &RunConfig) -> SimResult<Table> {
    let gamma = cfg.profile.gamma;
    let m = meta(cfg, Command::Phase, json!({"gamma": gamma, "probe_order": probe_labels(gamma)?}));
    let mut t = Table::new(m, &["mu", "regime", "lambda1", "lambda2", "lambda3", "n_points", "point_min", "point_max", "signs"]);
    for mu in cfg.phase.mu.values()? {
        let g = stationary_points(mu, gamma)?;
        let labels = g.labelled().ok();
        let lam = |k: usize| labels.map_or(f64::NAN, |l| l[k]);
        let signs: String = if labels.is_some() {
            sector_probes(&g)?.iter().map(|p| sign_of_re_phi(p.xi, &g).symbol()).collect()
        } else {
            String::new()
        };
        let min = g.points.iter().copied().fold(f64::INFINITY, f64::min);
        let max = g.points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        t.push(vec![
            mu.into(),
            format!("{:?}", g.regime).into(),
            lam(0).into(),
            lam(1).into(),
            lam(2).into(),
            g.points.len().into(),
            min.into(),
            max.into(),
            signs.into(),
        ])?;
    }
    Ok(t)
}

fn probe_labels(gamma: f64) -> SimResult<Vec<&'static str>> {
    let g = stationary_points(0.5 * lpd_phase::critical_speed(gamma), gamma)?;
    Ok(sector_probes(&g)?.iter().map(|p| p.label).collect())
}

fn ray_delta(data: &lpd_scattering::ScatteringData, mu: f64, gamma: f64) -> SimResult<DeltaFunction> {
    let g = PhaseGeometry::admissible(mu, gamma, EDGE_GUARD)?;
    Ok(DeltaFunction::build(data, &g)?)
}

fn delta(cfg: &RunConfig) -> SimResult<Table> {
    let data = cfg.scattering_data()?;
    let gamma = cfg.profile.gamma;
    let mut rays = Vec::new();
    let mut deltas = Vec::new();
    for mu in cfg.delta.mu.values()? {
        let d = ray_delta(&data, mu, gamma)?;
        let ex = d.exponents()?;
        rays.push(json!({
            "mu": mu,
            "lambda": d.lambdas(),
            "v": ex.v.map(cjson),
            "chi": ex.chi.map(cjson),
        }));
        deltas.push((mu, d));
    }
    let m = meta(cfg, Command::Delta, json!({"gamma": gamma, "rays": rays}));
    let mut t = table(m, headers(&["mu", "xi", "on_cut"], &["delta_plus", "delta_minus"]));
    for (mu, d) in &deltas {
        for xi in cfg.delta.xi.values()? {
            let z = C::new(xi, 0.0);
            let on_cut = d.on_cut(xi);
            let (plus, minus) = if on_cut {
                (d.eval(z, Some(Side::Plus))?, d.eval(z, Some(Side::Minus))?)
            } else {
                let v = d.eval(z, None)?;
                (v, v)
            };
            let mut row = vec![Cell::Float(*mu), Cell::Float(xi), on_cut.into()];
            row.extend(cpair(plus));
            row.extend(cpair(minus));
            t.push(row)?;
        }
    }
    Ok(t)
}

fn rel(a: Mat2, b: Mat2) -> f64 {
    (a - b).max_abs() / (1.0 + b.max_abs())
}

fn pcmodel(cfg: &RunConfig) -> SimResult<Table> {
    let data = cfg.scattering_data()?;
    let gamma = cfg.profile.gamma;
    let section = &cfg.pcmodel;
    let taus = section.tau.values()?;
    let m = meta(cfg, Command::PcModel, json!({"gamma": gamma, "tau": taus, "fit_radius": section.fit_radius}));
    let mut header = headers(&["mu", "saddle", "lambda"], &["v", "beta", "gamma", "r1", "r2"]);
    header.extend(["jump_residual", "fit_misfit_12", "fit_misfit_21"].map(String::from));
    let mut t = table(m, header);
    for mu in section.mu.values()? {
        let set = SaddleSet::build(&ray_delta(&data, mu, gamma)?, cfg.mode.phi_mode())?;
        for d in &set.models {
            let mut jump: f64 = 0.0;
            for &x in &taus {
                let tau = C::new(x, 0.0);
                let up = d.model.m(tau, true)?;
                jump = jump.max(rel(up, d.model.m(tau, false)? * d.model.real_line_jump()));
            }
            let expected = d.model.residue_matrix();
            let (mut f12, mut f21): (f64, f64) = (0.0, 0.0);
            for tau in [C::new(0.0, section.fit_radius), C::new(0.0, -section.fit_radius)] {
                let fit = (d.model.matrix(tau)? - Mat2::identity()) * tau;
                let misfit = |a: C, b: C| (a - b).norm() / b.norm().max(f64::MIN_POSITIVE);
                f12 = f12.max(misfit(fit.a12(), expected.a12()));
                f21 = f21.max(misfit(fit.a21(), expected.a21()));
            }
            let mut row = vec![Cell::Float(mu), d.s.into(), d.lambda.into()];
            for v in [d.v, d.beta, d.gamma, d.r1, d.r2] {
                row.extend(cpair(v));
            }
            row.extend([jump.into(), f12.into(), f21.into()]);
            t.push(row)?;
        }
    }
    Ok(t)
}

fn asymptote(cfg: &RunConfig) -> SimResult<Table> {
    let data = cfg.scattering_data()?;
    let gamma = cfg.profile.gamma;
    let options = AsymptoticOptions {
        phi_mode: cfg.mode.phi_mode(),
        power_base: cfg.asymptote.power_base,
        ..AsymptoticOptions::default()
    };
    let m = meta(cfg, Command::Asymptote, json!({"gamma": gamma, "options": options}));
    let mut header = headers(&["mu", "x", "t"], &["q", "background"]);
    header.extend(["abs_q", "branch", "error_exponent", "error_log"].map(String::from));
    let mut t = table(m, header);
    let times = cfg.asymptote.t.values()?;
    for mu in cfg.asymptote.mu.values()? {
        let ray = RayAsymptotics::new(&data, mu, gamma, options)?;
        for &time in &times {
            let r = ray.evaluate(time)?;
            let (exponent, log) = match r.error_order {
                Order::Power { exponent, log } => (exponent, log),
                Order::TableGap => (f64::NAN, false),
            };
            let mut row = vec![Cell::Float(mu), Cell::Float(mu * time), Cell::Float(time)];
            row.extend(cpair(r.value));
            row.extend(cpair(r.background));
            row.extend([r.value.norm().into(), r.branch.label().into(), exponent.into(), log.into()]);
            t.push(row)?;
        }
    }
    Ok(t)
}

fn soliton(cfg: &RunConfig) -> SimResult<Table> {
    let s = &cfg.soliton;
    let sol = ExactSoliton { amplitude: s.amplitude, alpha: s.alpha, gamma: s.gamma };
    let m = meta(
        cfg,
        Command::Soliton,
        json!({"A": s.amplitude, "alpha": s.alpha, "gamma": s.gamma, "t": s.t,
            "omega": lpd_asymptotics::soliton_frequency(s.amplitude, s.gamma)}),
    );
    let mut t = Table::new(m, &["x", "t", "re_q", "im_q", "abs_q", "abs_residual"]);
    for x in s.x.values()? {
        // a grid point on a pole is reported as NaN rather than aborting the table
        let (q, res) = match (sol.value(x, s.t), pde_residual(&sol, x, s.t, s.gamma)) {
            (Ok(q), Ok(r)) => (q, r.norm()),
            (Err(SimError::Asymptotics(AsymError::SingularPoint { .. })), _)
            | (_, Err(SimError::Asymptotics(AsymError::SingularPoint { .. }))) => {
                (C::new(f64::NAN, f64::NAN), f64::NAN)
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        t.push(vec![x.into(), s.t.into(), q.re.into(), q.im.into(), q.norm().into(), res.into()])?;
    }
    Ok(t)
}

fn simulate(cfg: &RunConfig) -> SimResult<Table> {
    let s = &cfg.simulate;
    let gamma = cfg.profile.gamma;
    let mut grid = match s.initial {
        InitialData::SmoothedStep { width } => {
            let w = width.unwrap_or(10.0 * s.h);
            FieldGrid::symmetric(s.half_width, s.h, 0.0, smoothed_step(cfg.profile.amplitude, w))?
        }
        InitialData::Soliton { amplitude, alpha } => {
            let sol = ExactSoliton { amplitude, alpha, gamma };
            FieldGrid::symmetric(s.half_width, s.h, 0.0, |x| sol.value(x, 0.0))?
        }
    };
    let mut snapshots = vec![grid.clone()];
    let mut accepted = 0;
    let mut rejected = 0;
    for k in 1..=s.snapshots {
        let target = s.t_end * k as f64 / s.snapshots as f64;
        let (next, stats) = evolve(&grid, target, gamma, &s.options)?;
        accepted += stats.accepted;
        rejected += stats.rejected;
        grid = next;
        snapshots.push(grid.clone());
    }
    let m = meta(
        cfg,
        Command::Simulate,
        json!({"gamma": gamma, "simulate": s, "accepted_steps": accepted, "rejected_steps": rejected}),
    );
    let mut t = Table::new(m, &["t", "x", "re_q", "im_q", "abs_q"]);
    for snap in &snapshots {
        for (k, q) in snap.values.iter().enumerate() {
            t.push(vec![snap.time.into(), snap.x(k).into(), q.re.into(), q.im.into(), q.norm().into()])?;
        }
    }
    Ok(t)
}

fn validate(cfg: &RunConfig) -> SimResult<Report> {
    let outcomes = run_checks(&cfg.validate.checks)?;
    let passed = outcomes.iter().all(|o| o.passed);
    let m = meta(
        cfg,
        Command::Validate,
        json!({"passed": passed, "count": outcomes.len(), "failed": outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect::<Vec<_>>()}),
    );
    let mut t = Table::new(m, &["id", "name", "passed", "seconds", "detail"]);
    for o in outcomes {
        t.push(vec![o.id.into(), o.name.into(), o.passed.into(), o.seconds.into(), o.detail.into()])?;
    }
    Ok(Report { table: t, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scatter_rows_match_the_closed_form() {
        let cfg = RunConfig::from_json(r#"{"scatter": {"xi": [0.5, -1.0]}, "profile": {"A": 2.0, "gamma": 0.1}}"#).unwrap();
        let t = run(Command::Scatter, &cfg).unwrap().table;
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.meta["xi1"], 1.0);
        // pure step: r₁r₂ = −A²/(4ξ² + A²)
        let (r1, r2) = match (&t.rows[0][7], &t.rows[0][8], &t.rows[0][9], &t.rows[0][10]) {
            (Cell::Float(a), Cell::Float(b), Cell::Float(c), Cell::Float(d)) => (C::new(*a, *b), C::new(*c, *d)),
            _ => panic!(),
        };
        assert!((r1 * r2 + 4.0 / 5.0).norm() < 1e-14);
    }

    #[test]
    fn phase_rows_report_regimes() {
        let cfg = RunConfig::from_json(r#"{"profile": {"A": 1.0, "gamma": 0.037037037037037035}, "phase": {"mu": [0.5, 3.0]}}"#)
            .unwrap();
        let t = run(Command::Phase, &cfg).unwrap().table;
        assert_eq!(t.rows[0][1], Cell::Text("ThreeReal".into()));
        assert_eq!(t.rows[0][8], Cell::Text("-++--++-".into()));
        assert_eq!(t.rows[1][1], Cell::Text("OneReal".into()));
    }

    #[test]
    fn soliton_poles_become_nan() {
        let cfg = RunConfig::from_json(r#"{"soliton": {"A": 2.0, "alpha": 0.0, "gamma": 0.05, "x": [0.0, 1.0], "t": 0.0}}"#)
            .unwrap();
        let t = run(Command::Soliton, &cfg).unwrap().table;
        assert!(matches!(t.rows[0][2], Cell::Float(v) if v.is_nan()));
        assert!(matches!(t.rows[1][5], Cell::Float(v) if v < 1e-8));
    }

    #[test]
    fn pcmodel_jump_and_fit() {
        let cfg = RunConfig::from_json(r#"{"profile": {"A": 2.0, "gamma": 0.037037037037037035}}"#).unwrap();
        let t = run(Command::PcModel, &cfg).unwrap().table;
        assert_eq!(t.rows.len(), 3);
        for row in &t.rows {
            let n = row.len();
            assert!(matches!(row[n - 3], Cell::Float(v) if v < 1e-6));
            assert!(matches!(row[n - 2], Cell::Float(v) if v < 0.05));
        }
    }

    #[test]
    fn validate_subset_reports_pass() {
        let cfg = RunConfig::from_json(r#"{"validate": {"checks": [7, 8]}}"#).unwrap();
        let r = run(Command::Validate, &cfg).unwrap();
        assert!(r.passed);
        assert_eq!(r.table.rows.len(), 2);
    }
}
