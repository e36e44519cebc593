//! Implementations of the subcommands. Each returns the rendered CSV text.

use muntz_core::ek::{ek_int_numeric, ek_jmf_derivative, ek_monomial_closed, EkOrder, NumericOptions};
use muntz_core::ivp::DpOptions;
use muntz_core::jmf::{jmf_eigenvalue, jmf_eval, jmf_norm, jmf_recurrence_batch, JmfKind, JmfParams};
use muntz_core::projection::{error_norms, project as project_coeffs, weighted_norm};
use muntz_core::quadrature::{gjm_base_rule, gjmqr_rule};
use muntz_core::solvers::{
    grid_error_report, manufactured_rhs, solve_burgers, solve_fractional_diffusion, solve_muntz_monomial_ode,
    solve_steady_ode, steady_exact, BurgersCase, ExperimentConfig, MuntzBasis,
};
use muntz_core::Error;
use rayon::prelude::*;

use crate::table::{Cell, Table};
use crate::{BurgersArgs, FamilyArgs, SteadyArgs, TimeArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error("numerical failure: {0}")]
    Numerical(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => CliError::Invalid(m),
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Output(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

const fn params(kind: JmfKind, alpha: f64, beta: f64, mu: f64, sigma: f64, eta: f64, b: f64) -> JmfParams {
    JmfParams { kind, alpha, beta, mu, sigma, eta, b }
}

fn resolve(f: &FamilyArgs, d: JmfParams) -> CliResult<JmfParams> {
    let kind = match f.kind {
        Some(k) => JmfKind::try_from(k)?,
        None => d.kind,
    };
    Ok(JmfParams::new(
        kind,
        f.alpha.unwrap_or(d.alpha),
        f.beta.unwrap_or(d.beta),
        f.mu.unwrap_or(d.mu),
        f.sigma.unwrap_or(d.sigma),
        f.eta.unwrap_or(d.eta),
        f.b.unwrap_or(d.b),
    )?)
}

/// Rejects parameter sets that strictly violate a constraint of their kind.
fn require_valid(p: &JmfParams) -> CliResult<()> {
    match p.validate().failures().next() {
        Some(c) => Err(invalid(format!("constraint {} violated ({})", c.name, c.detail))),
        None => Ok(()),
    }
}

fn require_kind(p: &JmfParams, kind: JmfKind, what: &str) -> CliResult<()> {
    if p.kind == kind {
        Ok(())
    } else {
        Err(invalid(format!("{what} needs --kind {kind}")))
    }
}

fn require_at_least(name: &str, v: usize, min: usize) -> CliResult<()> {
    if v >= min {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be at least {min}, got {v}")))
    }
}

/// The comment line: program, version, command and every parameter used.
fn comment(cmd: &str, p: &JmfParams, extra: &[(&str, String)]) -> String {
    let mut s = format!(
        "muntz-cli {} {cmd} kind={} alpha={:?} beta={:?} mu={:?} sigma={:?} eta={:?} b={:?}",
        env!("CARGO_PKG_VERSION"),
        p.kind,
        p.alpha,
        p.beta,
        p.mu,
        p.sigma,
        p.eta,
        p.b
    );
    for (k, v) in extra {
        s.push(' ');
        s.push_str(k);
        s.push('=');
        s.push_str(v);
    }
    s
}

fn time_options(t: &TimeArgs, max_steps: usize) -> DpOptions {
    DpOptions { rtol: t.rtol, atol: t.atol, max_steps, ..DpOptions::default() }
}

fn time_fields(t: &TimeArgs, t_final: f64) -> Vec<(&'static str, String)> {
    vec![("t_final", format!("{:?}", t_final)), ("rtol", format!("{:?}", t.rtol)), ("atol", format!("{:?}", t.atol))]
}

pub fn quad_nodes(f: &FamilyArgs, n: usize) -> CliResult<String> {
    let p = resolve(f, params(JmfKind::First, 0.5, 1.5, 0.5, 0.5, 2.0, 10.0))?;
    let base = gjm_base_rule(n, p.alpha, p.beta, p.sigma, p.b)?;
    let r1 = gjmqr_rule(JmfKind::First, n, &p)?;
    let r2 = gjmqr_rule(JmfKind::Second, n, &p)?;
    let mut t = Table::new(&["j", "node", "w_base", "w_gjmqr1", "w_gjmqr2"]);
    for j in 0..base.len() {
        t.push(vec![j.into(), base.nodes[j].into(), base.weights[j].into(), r1.weights[j].into(), r2.weights[j].into()]);
    }
    Ok(t.render(&comment("quad-nodes", &p, &[("n", n.to_string())])))
}

pub fn ortho_check(f: &FamilyArgs, n: usize) -> CliResult<String> {
    let p = resolve(f, params(JmfKind::First, 0.5, 1.5, 0.5, 0.5, -3.0, 1.0))?;
    let rule = gjmqr_rule(p.kind, n, &p)?;
    let mut gram = vec![vec![0.0; n + 1]; n + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = jmf_recurrence_batch(n, &p, x)?;
        for i in 0..=n {
            for j in 0..=n {
                gram[i][j] += w * v[i] * v[j];
            }
        }
    }
    let norms = (0..=n).map(|k| jmf_norm(k, &p)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["n", "m", "gram", "expected", "rel_dev"]);
    for i in 0..=n {
        for j in 0..=n {
            let expected = if i == j { norms[i] } else { 0.0 };
            let dev = (gram[i][j] - expected).abs() / (norms[i] * norms[j]).sqrt();
            t.push(vec![i.into(), j.into(), gram[i][j].into(), expected.into(), dev.into()]);
        }
    }
    Ok(t.render(&comment("ortho-check", &p, &[("n", n.to_string())])))
}

/// `1..=n` followed by `10, 20, 50, 100, ...` and finally `n_max` itself.
fn eigen_degrees(n: usize, n_max: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n.min(n_max)).collect();
    let mut decade = 10;
    'outer: loop {
        for m in [1, 2, 5] {
            let d = m * decade;
            if d > n_max {
                break 'outer;
            }
            if d > n {
                out.push(d);
            }
        }
        decade *= 10;
    }
    if out.last() != Some(&n_max) && n_max > n {
        out.push(n_max);
    }
    out
}

/// Relative deviation of `I^mu D^mu J_n` from `J_n` for the first kind.
fn inverse_residual(n: usize, p: &JmfParams, opts: &NumericOptions) -> CliResult<f64> {
    let p1 = p.with_kind(JmfKind::First);
    let (scale, out) = ek_jmf_derivative(JmfKind::First, n, &p1)?;
    let opts = (*opts).with_lead_power(p1.prefactor_exponents().0);
    let ord = EkOrder::left_integral(p.mu)?;
    let mut dev: f64 = 0.0;
    let mut size: f64 = 0.0;
    for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let x = frac * p.b;
        let back = ek_int_numeric(|s| scale * jmf_eval(n, &out, s).unwrap_or(f64::NAN), x, ord, p1.ek_params(), &opts)?;
        let j = jmf_eval(n, &p1, x)?;
        dev = dev.max((back - j).abs());
        size = size.max(j.abs());
    }
    Ok(dev / size)
}

pub fn eigen_check(f: &FamilyArgs, n: usize, n_max: usize) -> CliResult<String> {
    let p = resolve(f, params(JmfKind::First, 1.0, 2.0, 0.75, 0.5, 0.5, 1.0))?;
    require_valid(&p)?;
    require_at_least("--n-max", n_max, 1)?;
    let opts = NumericOptions::from_env()?;
    let rows = eigen_degrees(n, n_max)
        .into_iter()
        .map(|k| -> CliResult<Vec<Cell>> {
            let l1 = jmf_eigenvalue(JmfKind::First, k, &p)?;
            let l2 = jmf_eigenvalue(JmfKind::Second, k, &p)?;
            let scale = (k as f64).powf(2.0 * p.mu);
            let resid = if k <= n { Some(inverse_residual(k, &p, &opts)?) } else { None };
            Ok(vec![k.into(), l1.into(), l2.into(), (l1 / scale).into(), (l2 / scale).into(), resid.into()])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(&["n", "lambda1", "lambda2", "scaled1", "scaled2", "inverse_residual"]);
    t.extend(rows);
    let extra = [("n", n.to_string()), ("n_max", n_max.to_string()), ("quad_nodes", opts.nodes.to_string())];
    Ok(t.render(&comment("eigen-check", &p, &extra)))
}

pub fn project(f: &FamilyArgs, n_max: usize, case: u8) -> CliResult<String> {
    let b = match case {
        1 => 784.0,
        2 => 1.0,
        _ => return Err(invalid(format!("--case must be 1 or 2 for project, got {case}"))),
    };
    let p = resolve(f, params(JmfKind::First, 0.5, 1.5, 0.5, 0.5, -3.0, b))?;
    require_at_least("--n-max", n_max, 1)?;
    // the leading power of the first-kind family, whatever --kind says
    let lead = p.sigma * (p.beta - p.eta - p.mu);
    let half = 0.5 * p.big_b();
    let sigma = p.sigma;
    let u = move |x: f64| match case {
        1 => x.powf(lead) * x.powf(sigma).sin(),
        _ => x.powf(lead) * (x.powf(sigma) - half).abs().powf(2.5),
    };
    let (quad, probe) = if case == 1 { (200, 400) } else { (2000, 2000) };
    let quad = quad.max(4 * n_max + 2);
    let norm = weighted_norm(u, &p, quad)?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| -> CliResult<Vec<Cell>> {
            let c = project_coeffs(u, n, &p, quad)?;
            let (l2, linf) = error_norms(u, &c, probe)?;
            Ok(vec![n.into(), l2.into(), (l2 / norm).into(), linf.into(), c.coeffs[n].abs().into()])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(&["n", "l2_error", "rel_l2_error", "linf_error", "abs_last_coeff"]);
    t.extend(rows);
    let extra = [("case", case.to_string()), ("n_max", n_max.to_string()), ("quad_size", quad.to_string())];
    Ok(t.render(&comment("project", &p, &extra)))
}

fn steady_setup(f: &FamilyArgs, s: &SteadyArgs, what: &str) -> CliResult<(JmfParams, ExperimentConfig)> {
    let p = resolve(f, params(JmfKind::First, 0.5, 1.5, 1.5, 0.5, -3.0, 1.0))?;
    require_kind(&p, JmfKind::First, what)?;
    require_valid(&p)?;
    let cfg = ExperimentConfig { k1: s.k1, k2: s.k2, nu: s.nu, ..ExperimentConfig::default() };
    cfg.check()?;
    Ok((p, cfg))
}

fn steady_fields(s: &SteadyArgs) -> Vec<(&'static str, String)> {
    vec![("nu", format!("{:?}", s.nu)), ("k1", format!("{:?}", s.k1)), ("k2", format!("{:?}", s.k2))]
}

pub fn ode(f: &FamilyArgs, s: &SteadyArgs, n: usize) -> CliResult<String> {
    let (p, cfg) = steady_setup(f, s, "ode")?;
    require_at_least("--n", n, 1)?;
    let exact = steady_exact(cfg.nu, p.sigma);
    let rhs = manufactured_rhs(&exact, &cfg, &p)?;
    let (_, sol) = solve_steady_ode(&cfg, n, &p, &|x| rhs.eval(x))?;
    let mut t = Table::new(&["j", "node", "numeric", "exact", "abs_err"]);
    for (j, (&x, &y)) in sol.nodes.iter().zip(&sol.nodal_values).enumerate() {
        let e = exact.eval(x);
        t.push(vec![j.into(), x.into(), y.into(), e.into(), (y - e).abs().into()]);
    }
    let mut extra = steady_fields(s);
    extra.push(("n", n.to_string()));
    Ok(t.render(&comment("ode", &p, &extra)))
}

pub fn ode_sweep(f: &FamilyArgs, s: &SteadyArgs, n_max: usize) -> CliResult<String> {
    let (p, cfg) = steady_setup(f, s, "ode-sweep")?;
    require_at_least("--n-max", n_max, 1)?;
    let exact = steady_exact(cfg.nu, p.sigma);
    let rhs = manufactured_rhs(&exact, &cfg, &p)?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| -> CliResult<Vec<Cell>> {
            let rhs_fn = |x: f64| rhs.eval(x);
            let (_, sol) = solve_steady_ode(&cfg, n, &p, &rhs_fn)?;
            let err = sol
                .nodes
                .iter()
                .zip(&sol.nodal_values)
                .fold(0.0f64, |m, (&x, &y)| m.max((y - exact.eval(x)).abs()));
            let mz = solve_muntz_monomial_ode(&cfg, n, &MuntzBasis::for_params(n, &p), &p, &rhs_fn)?;
            Ok(vec![n.into(), err.into(), sol.cond.into(), mz.cond.into()])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(&["n", "err_inf", "cond_jmf", "cond_muntz"]);
    t.extend(rows);
    let mut extra = steady_fields(s);
    extra.push(("n_max", n_max.to_string()));
    Ok(t.render(&comment("ode-sweep", &p, &extra)))
}

pub fn pde(f: &FamilyArgs, n: usize, nu: f64, time: &TimeArgs) -> CliResult<String> {
    let p = resolve(f, params(JmfKind::First, 0.5, 3.5, 1.5, 0.5, -1.0, 1.0))?;
    require_kind(&p, JmfKind::First, "pde")?;
    require_valid(&p)?;
    require_at_least("--n", n, 1)?;
    let t_final = time.t_final.unwrap_or(5.0);
    let cfg = ExperimentConfig { nu, t_final, ..ExperimentConfig::default() };
    cfg.check()?;
    let pw = p.sigma * nu;
    let scale = ek_monomial_closed(pw, EkOrder::left_derivative(p.mu)?, p.ek_params())?;
    let d = |x: f64, t: f64| -1.0 / (1.0 + x * t);
    let s = |x: f64, t: f64| {
        let xp = x.powf(pw);
        2.0 * t * (t * t).cos() * xp - d(x, t) * scale * xp * (t * t).sin()
    };
    let sol = solve_fractional_diffusion(&cfg, n, &p, d, s, |_| 0.0, &time_options(time, 5_000_000))?;
    let nodal = sol.final_nodal()?;
    let mut t = Table::new(&["j", "node", "numeric", "exact", "abs_err"]);
    for (j, (&x, &u)) in sol.system.nodes.iter().zip(&nodal).enumerate() {
        let e = x.powf(pw) * (t_final * t_final).sin();
        t.push(vec![j.into(), x.into(), u.into(), e.into(), (u - e).abs().into()]);
    }
    let mut extra = vec![("n", n.to_string()), ("nu", format!("{:?}", nu))];
    extra.extend(time_fields(time, t_final));
    Ok(t.render(&comment("pde", &p, &extra)))
}

/// Parameters, configuration and manufactured case (`None` for zero data).
fn burgers_setup(f: &FamilyArgs, a: &BurgersArgs, what: &str) -> CliResult<(JmfParams, ExperimentConfig, Option<BurgersCase>)> {
    let case = match a.case {
        0 => None,
        c => Some(BurgersCase::from_index(c)?),
    };
    let p = resolve(f, case.unwrap_or(BurgersCase::Sine).default_params())?;
    require_kind(&p, JmfKind::Second, what)?;
    require_valid(&p)?;
    if case.is_some() && p.b != 1.0 {
        return Err(invalid("the manufactured Burgers solutions live on [0, 1]; --b must be 1"));
    }
    if a.epsilon.is_nan() || a.epsilon < 0.0 {
        return Err(invalid(format!("--epsilon must be non-negative, got {}", a.epsilon)));
    }
    let cfg = ExperimentConfig { epsilon: a.epsilon, t_final: a.time.t_final.unwrap_or(10.0), ..ExperimentConfig::default() };
    cfg.check()?;
    Ok((p, cfg, case))
}

fn burgers_fields(a: &BurgersArgs, cfg: &ExperimentConfig) -> Vec<(&'static str, String)> {
    let mut v = vec![("case", a.case.to_string()), ("epsilon", format!("{:?}", a.epsilon))];
    v.extend(time_fields(&a.time, cfg.t_final));
    v
}

const BURGERS_MAX_STEPS: usize = 20_000_000;

pub fn burgers(f: &FamilyArgs, a: &BurgersArgs, n: usize) -> CliResult<String> {
    let (p, cfg, case) = burgers_setup(f, a, "burgers")?;
    require_at_least("--n", n, 1)?;
    let eps = cfg.epsilon;
    let source = |x: f64, t: f64| case.map_or(0.0, |c| c.source(x, t, eps));
    let initial = |x: f64| case.map_or(0.0, |c| c.initial(x));
    let sol = solve_burgers(&cfg, n, &p, source, initial, &time_options(&a.time, BURGERS_MAX_STEPS))?;
    let u = sol.system.mass.matvec(sol.trajectory.final_state())?;
    let mut t = Table::new(&["j", "node", "numeric", "exact", "abs_err"]);
    for (j, (&x, &v)) in sol.system.nodes.iter().zip(&u).enumerate() {
        let e = case.map_or(0.0, |c| c.exact(x, cfg.t_final));
        t.push(vec![j.into(), x.into(), v.into(), e.into(), (v - e).abs().into()]);
    }
    let mut extra = burgers_fields(a, &cfg);
    extra.push(("n", n.to_string()));
    Ok(t.render(&comment("burgers", &p, &extra)))
}

/// Grid used for the sweep's error norms.
const SWEEP_GRID: usize = 1000;

pub fn burgers_sweep(f: &FamilyArgs, a: &BurgersArgs, n_max: usize) -> CliResult<String> {
    let (p, cfg, case) = burgers_setup(f, a, "burgers-sweep")?;
    require_at_least("--n-max", n_max, 4)?;
    let eps = cfg.epsilon;
    let opts = time_options(&a.time, BURGERS_MAX_STEPS);
    let ns: Vec<usize> = (4..=n_max).step_by(2).collect();
    let rows = ns
        .par_iter()
        .map(|&n| -> CliResult<Vec<Cell>> {
            let source = |x: f64, t: f64| case.map_or(0.0, |c| c.source(x, t, eps));
            let initial = |x: f64| case.map_or(0.0, |c| c.initial(x));
            let sol = solve_burgers(&cfg, n, &p, source, initial, &opts)?;
            let c = sol.final_coeffs()?;
            let e = grid_error_report(|x| c.eval(x), |x| case.map_or(0.0, |k| k.exact(x, cfg.t_final)), p.b, SWEEP_GRID)?;
            Ok(vec![n.into(), e.e2.into(), e.einf.into()])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(&["n", "e2", "einf"]);
    t.extend(rows);
    let mut extra = burgers_fields(a, &cfg);
    extra.push(("n_max", n_max.to_string()));
    Ok(t.render(&comment("burgers-sweep", &p, &extra)))
}
