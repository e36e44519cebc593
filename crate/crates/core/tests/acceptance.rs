//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the summary prints in order and
//! the process exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use common::beta_ref;
use muntz_core::ek::{ek_caputo_numeric, ek_int_numeric, ek_monomial_closed, EkOrder, EkParams, NumericOptions};
use muntz_core::ivp::DpOptions;
use muntz_core::jmf::{jmf_eigenvalue, jmf_eval, jmf_norm, jmf_recurrence_batch, sl_coefficients, sl_exponents, JmfKind, JmfParams};
use muntz_core::projection::{error_norms, fit_slope, geometric_decay_slope, project, weighted_norm};
use muntz_core::quadrature::{gjm_base_rule, gjmqr_rule};
use muntz_core::solvers::{
    grid_error_report, manufactured_rhs, solve_burgers, solve_fractional_diffusion, solve_muntz_monomial_ode,
    solve_steady_ode, steady_exact, BurgersCase, ExperimentConfig, LinearSolver, MuntzBasis,
};

type Outcome = Result<String, String>;

fn ok_or<T>(r: muntz_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

// 1. Gram matrices of both kinds against the closed-form norms.
fn gram_orthogonality() -> Outcome {
    let sets = [
        JmfParams { kind: JmfKind::First, alpha: 0.5, beta: 1.5, mu: 0.5, sigma: 0.5, eta: -3.0, b: 1.0 },
        JmfParams { kind: JmfKind::Second, alpha: 0.5, beta: 2.0, mu: 1.0, sigma: 0.5, eta: 2.0, b: 1.0 },
    ];
    let nmax = 12;
    let mut worst: f64 = 0.0;
    for p in sets {
        let rule = ok_or(gjmqr_rule(p.kind, nmax + 1, &p))?;
        let vals: Vec<Vec<f64>> =
            rule.nodes.iter().map(|&x| ok_or(jmf_recurrence_batch(nmax, &p, x))).collect::<Result<_, _>>()?;
        let norms: Vec<f64> = (0..=nmax).map(|n| ok_or(jmf_norm(n, &p))).collect::<Result<_, _>>()?;
        for n in 0..=nmax {
            for m in 0..=nmax {
                let g: f64 = rule.weights.iter().zip(&vals).map(|(w, v)| w * v[n] * v[m]).sum();
                let err = if n == m { rel(g, norms[n]) } else { g.abs() / (norms[n] * norms[m]).sqrt() };
                worst = worst.max(err);
            }
        }
    }
    if worst <= 1e-9 {
        Ok(format!("max relative Gram deviation {worst:.2e} (both kinds, n, m <= 12)"))
    } else {
        Err(format!("max relative Gram deviation {worst:.2e} > 1e-9"))
    }
}

// 2. Sturm-Liouville chain reproduces the eigenvalue times the function.
fn eigenrelation() -> Outcome {
    let base = JmfParams { kind: JmfKind::First, alpha: 1.0, beta: 2.0, mu: 0.75, sigma: 0.5, eta: 0.5, b: 1.0 };
    let mu = base.mu;
    let left = ok_or(EkOrder::left_derivative(mu))?;
    let right = ok_or(EkOrder::right_derivative(mu))?;
    let xs: Vec<f64> = (1..=10).map(|i| i as f64 / 11.0).collect();
    let mut worst: f64 = 0.0;
    for kind in [JmfKind::First, JmfKind::Second] {
        let p = base.with_kind(kind);
        let (_, (ap, rp)) = sl_exponents(&p);
        for n in 0..=8 {
            let f = p.form(n);
            let chain = match kind {
                JmfKind::First => ok_or(f.apply(left, p.eta))?.mul_power(ap, rp),
                JmfKind::Second => ok_or(f.apply(right, p.eta))?.mul_power(ap, rp),
            };
            let chain = match kind {
                JmfKind::First => ok_or(chain.apply(right, p.eta))?,
                JmfKind::Second => ok_or(chain.apply(left, p.eta))?,
            };
            let lambda = ok_or(jmf_eigenvalue(kind, n, &p))?;
            let vals: Vec<f64> = xs.iter().map(|&x| ok_or(jmf_eval(n, &p, x))).collect::<Result<_, _>>()?;
            // relative to the sampled amplitude, so sign changes of J_n do not inflate the error
            let amp = lambda * vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (&x, &v) in xs.iter().zip(&vals) {
                let (w, _) = ok_or(sl_coefficients(&p, x))?;
                let lhs = ok_or(chain.eval(x))? / w;
                worst = worst.max((lhs - lambda * v).abs() / amp);
            }
        }
    }
    if worst <= 1e-8 {
        Ok(format!("max relative deviation {worst:.2e} over n <= 8, 10 points, both kinds"))
    } else {
        Err(format!("max relative deviation {worst:.2e} > 1e-8"))
    }
}

// 3. Exactness of the base and reweighted rules.
fn quadrature_exactness() -> Outcome {
    let sets = [
        JmfParams { kind: JmfKind::First, alpha: 0.5, beta: 1.5, mu: 0.5, sigma: 0.5, eta: -3.0, b: 1.0 },
        JmfParams { kind: JmfKind::Second, alpha: 0.5, beta: 2.0, mu: 1.0, sigma: 0.5, eta: 2.0, b: 1.0 },
        JmfParams { kind: JmfKind::First, alpha: -0.3, beta: 0.7, mu: 0.4, sigma: 1.5, eta: 0.2, b: 2.0 },
    ];
    let mut worst: f64 = 0.0;
    for p in sets {
        let (a, bt, s) = (p.alpha, p.beta, p.sigma);
        let big_b = p.b.powf(s);
        for n in 0..=25 {
            let base = ok_or(gjm_base_rule(n, a, bt, s, p.b))?;
            let r1 = ok_or(gjmqr_rule(JmfKind::First, n, &p))?;
            let r2 = ok_or(gjmqr_rule(JmfKind::Second, n, &p))?;
            for k in 0..=(2 * n + 1) {
                let kf = k as f64;
                let exact = big_b.powf(kf + bt + a + 1.0) * beta_ref(kf + bt + 1.0, a + 1.0) / s;
                let q0 = ok_or(base.integrate(|x| x.powf(kf * s)))?;
                let e1 = 2.0 * s * (bt - p.eta - p.mu);
                let q1 = ok_or(r1.integrate(|x| x.powf(e1 + kf * s)))?;
                let q2: f64 = r2
                    .weights
                    .iter()
                    .zip(&r2.nodes)
                    .zip(r2.gaps())
                    .map(|((w, x), g)| w * x.powf(2.0 * s * p.eta + kf * s) * g.powf(2.0 * a))
                    .sum();
                worst = worst.max(rel(q0, exact)).max(rel(q1, exact)).max(rel(q2, exact));
            }
        }
    }
    if worst <= 1e-11 {
        Ok(format!("max relative error {worst:.2e} (base, GJMQR-1, GJMQR-2; n <= 25)"))
    } else {
        Err(format!("max relative error {worst:.2e} > 1e-11"))
    }
}

fn fig3_params() -> JmfParams {
    JmfParams { kind: JmfKind::First, alpha: 0.5, beta: 1.5, mu: 1.5, sigma: 0.5, eta: -3.0, b: 1.0 }
}

// 4. Steady fractional ODE in and out of the Müntz-monomial basis.
fn steady_ode() -> Outcome {
    let p = fig3_params();
    let cfg = ExperimentConfig { nu: 3.0, ..ExperimentConfig::default() };
    let exact = steady_exact(cfg.nu, p.sigma);
    let rhs = ok_or(manufactured_rhs(&exact, &cfg, &p))?;
    let f = |x: f64| rhs.eval(x);
    let mut worst: f64 = 0.0;
    for n in 3..=60 {
        let (_, sol) = ok_or(solve_steady_ode(&cfg, n, &p, &f))?;
        for (x, y) in sol.nodes.iter().zip(&sol.nodal_values) {
            worst = worst.max((y - exact.eval(*x)).abs());
        }
    }
    let (_, jmf20) = ok_or(solve_steady_ode(&cfg, 20, &p, &f))?;
    let mz20 = ok_or(solve_muntz_monomial_ode(&cfg, 20, &MuntzBasis::for_params(20, &p), &p, &f))?;
    let ratio = jmf20.cond / mz20.cond;
    // coefficients at n = 100, formed as a = A^{-1} F for both bases and, for
    // contrast, by the LU solve used everywhere else
    let max_abs = |c: &[f64]| c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut ratios = Vec::new();
    for solver in [LinearSolver::ExplicitInverse, LinearSolver::Lu] {
        let c = ExperimentConfig { solver, ..cfg };
        let (jmf, _) = ok_or(solve_steady_ode(&c, 100, &p, &f))?;
        let mz = ok_or(solve_muntz_monomial_ode(&c, 100, &MuntzBasis::for_params(100, &p), &p, &f))?;
        ratios.push(max_abs(&mz.coeffs) / max_abs(&jmf.coeffs));
    }
    let detail = format!(
        "max nodal error {worst:.2e} (3 <= n <= 60); cond ratio {ratio:.2e} at n = 20; \
         coeff ratio at n = 100 {:.2e} with a = A^-1 F ({:.2e} with an LU solve)",
        ratios[0], ratios[1]
    );
    if worst <= 1e-8 && ratio <= 1e-2 && ratios[0] >= 1e3 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 5. Fractional diffusion with a manufactured solution in the trial span.
fn fractional_diffusion() -> Outcome {
    let p = JmfParams { kind: JmfKind::First, alpha: 0.5, beta: 3.5, mu: 1.5, sigma: 0.5, eta: -1.0, b: 1.0 };
    let nu = 7.0;
    let pw = p.sigma * nu;
    let cfg = ExperimentConfig { nu, t_final: 5.0, ..ExperimentConfig::default() };
    let scale = ok_or(ek_monomial_closed(pw, ok_or(EkOrder::left_derivative(p.mu))?, p.ek_params()))?;
    let d = |x: f64, t: f64| -1.0 / (1.0 + x * t);
    let s = |x: f64, t: f64| {
        let xp = x.powf(pw);
        2.0 * t * (t * t).cos() * xp - d(x, t) * scale * xp * (t * t).sin()
    };
    let rtol = 1e-10;
    let opts = DpOptions { rtol, atol: 1e-12, max_steps: 5_000_000, ..DpOptions::default() };
    let sol = ok_or(solve_fractional_diffusion(&cfg, 10, &p, d, s, |_| 0.0, &opts))?;
    let nodal = ok_or(sol.final_nodal())?;
    let tf = cfg.t_final;
    let err = sol
        .system
        .nodes
        .iter()
        .zip(&nodal)
        .fold(0.0f64, |m, (x, u)| m.max((u - x.powf(pw) * (tf * tf).sin()).abs()));
    let detail = format!("max nodal error {err:.2e} at T = 5 (bound {:.0e}, {} steps)", 100.0 * rtol, sol.trajectory.stats.accepted);
    if err <= 100.0 * rtol {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Errors below this level are dominated by rounding in the nodal
/// evaluation and time stepping (a few thousand machine epsilons).
const ROUNDOFF_PLATEAU: f64 = 1e-12;

// 6. Burgers' equation: exponential decay of the max error in n.
fn burgers() -> Outcome {
    let ns = [4usize, 6, 8, 10, 12];
    let mut lines = Vec::new();
    let mut pass = true;
    for case in [BurgersCase::Sine, BurgersCase::Cosine] {
        let p = case.default_params();
        let cfg = ExperimentConfig { epsilon: 0.1, t_final: 10.0, ..ExperimentConfig::default() };
        let opts = DpOptions { rtol: 1e-10, atol: 1e-12, max_steps: 20_000_000, ..DpOptions::default() };
        let mut errs = Vec::new();
        for &n in &ns {
            let sol = ok_or(solve_burgers(&cfg, n, &p, |x, t| case.source(x, t, cfg.epsilon), |x| case.initial(x), &opts))?;
            let c = ok_or(sol.final_coeffs())?;
            let e = ok_or(grid_error_report(|x| c.eval(x), |x| case.exact(x, cfg.t_final), p.b, 1000))?;
            errs.push(e.einf);
        }
        let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
        let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
        let slope = fit_slope(&xs, &ys).unwrap_or(f64::NAN);
        // once both errors sit on the rounding plateau their order is noise
        let decreasing = errs.windows(2).all(|w| w[1] < w[0] || w[0].max(w[1]) <= ROUNDOFF_PLATEAU);
        let strict = errs.windows(2).all(|w| w[1] < w[0]);
        pass &= decreasing && slope <= -0.5;
        let list: Vec<String> = errs.iter().map(|e| format!("{e:.1e}")).collect();
        let note = if strict { "" } else { " (plateau reached)" };
        lines.push(format!("case {}: Einf [{}] slope {slope:.2}{note}", case.index(), list.join(", ")));
    }
    if pass {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

// 7. Projection error and coefficient decay.
fn projection_rates() -> Outcome {
    // smooth case on a long interval, so coefficients 20..40 sit above roundoff
    let p = JmfParams { kind: JmfKind::First, alpha: 0.5, beta: 1.5, mu: 0.5, sigma: 0.5, eta: -3.0, b: 784.0 };
    let (a_exp, _) = p.prefactor_exponents();
    let u = |x: f64| x.powf(a_exp) * x.powf(p.sigma).sin();
    let c = ok_or(project(u, 40, &p, 200))?;
    let (l2, _) = ok_or(error_norms(u, &c, 400))?;
    let norm = ok_or(weighted_norm(u, &p, 200))?;
    let rel_l2 = l2 / norm;
    let slope = geometric_decay_slope(&c.coeffs, 20, 40).unwrap_or(f64::NAN);
    let smooth_ok = rel_l2 <= 1e-10 && slope <= -0.3;

    // kinked case: algebraic rate that steepens with the regularity index
    let pk = JmfParams { b: 1.0, ..p };
    let half = 0.5 * pk.big_b();
    let ns = [8usize, 12, 16, 24, 32];
    let mut rates = Vec::new();
    for gamma in [1.5, 2.5, 3.5] {
        let uk = |x: f64| x.powf(a_exp) * (x.powf(pk.sigma) - half).abs().powf(gamma);
        let norm = ok_or(weighted_norm(uk, &pk, 2000))?;
        let mut ys = Vec::new();
        for &n in &ns {
            let ck = ok_or(project(uk, n, &pk, 2000))?;
            let (e, _) = ok_or(error_norms(uk, &ck, 2000))?;
            ys.push((e / norm).ln());
        }
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        rates.push(fit_slope(&xs, &ys).unwrap_or(f64::NAN));
    }
    let kink_ok = rates.iter().all(|r| *r < 0.0) && rates.windows(2).all(|w| w[1] < w[0]);
    let detail = format!(
        "smooth: relative L2 error {rel_l2:.1e} at N = 40, decay slope {slope:.2}; kink rates (gamma 1.5, 2.5, 3.5): {:.2}, {:.2}, {:.2}",
        rates[0], rates[1], rates[2]
    );
    if smooth_ok && kink_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 8. Eigenvalue growth like n^{2 mu}.
fn eigen_asymptotics() -> Outcome {
    let p = JmfParams { kind: JmfKind::First, alpha: 1.0, beta: 2.0, mu: 0.75, sigma: 0.5, eta: 0.5, b: 1.0 };
    let mut parts = Vec::new();
    let mut pass = true;
    for kind in [JmfKind::First, JmfKind::Second] {
        let r = |n: usize| -> Result<f64, String> {
            Ok(ok_or(jmf_eigenvalue(kind, n, &p))? / (n as f64).powf(2.0 * p.mu))
        };
        let (r3, r4) = (r(1000)?, r(10000)?);
        let d = rel(r3, r4);
        pass &= d <= 0.01;
        parts.push(format!("kind {}: {r3:.6} vs {r4:.6} ({:.2e})", kind.index(), d));
    }
    if pass {
        Ok(parts.join("; "))
    } else {
        Err(parts.join("; "))
    }
}

// 9. Semigroup, left inverse and integration by parts, evaluated numerically.
fn ek_identities() -> Outcome {
    let ekp = ok_or(EkParams::new(0.5, 0.3, 1.0))?;
    let (s, eta) = (ekp.sigma, ekp.eta);
    let (m1, m2) = (0.4, 0.7);
    let f = |t: f64| t.powf(s).sin();
    let opts = NumericOptions::default().with_lead_power(s);
    let xs = [0.1, 0.35, 0.6, 0.85];

    // semigroup, left side: I^{m1}_{eta} I^{m2}_{eta+m1} f = I^{m1+m2}_{eta} f
    let mut semi: f64 = 0.0;
    for &x in &xs {
        let inner = |t: f64| {
            ek_int_numeric(f, t, EkOrder::left_integral(m2).unwrap(), ekp.with_eta(eta + m1), &opts).unwrap_or(f64::NAN)
        };
        let lhs = ok_or(ek_int_numeric(inner, x, ok_or(EkOrder::left_integral(m1))?, ekp, &opts))?;
        let rhs = ok_or(ek_int_numeric(f, x, ok_or(EkOrder::left_integral(m1 + m2))?, ekp, &opts))?;
        semi = semi.max(rel(lhs, rhs));
    }
    // right side, where the inner result vanishes like (B - V)^{m2} at b
    for &x in &xs {
        let inner = |t: f64| {
            ek_int_numeric(f, t, EkOrder::right_integral(m2).unwrap(), ekp.with_eta(eta + m1), &NumericOptions::default())
                .unwrap_or(f64::NAN)
        };
        let o = NumericOptions::default().with_tail_power(m2);
        let lhs = ok_or(ek_int_numeric(inner, x, ok_or(EkOrder::right_integral(m1))?, ekp, &o))?;
        let rhs = ok_or(ek_int_numeric(f, x, ok_or(EkOrder::right_integral(m1 + m2))?, ekp, &NumericOptions::default()))?;
        semi = semi.max(rel(lhs, rhs));
    }

    // left inverse through the Caputo form: g = I^mu f, g'(x) = I^mu[t f'(t)](x) / x
    let mu = 0.6;
    let int_ord = ok_or(EkOrder::left_integral(mu))?;
    let tf = |t: f64| s * t.powf(s) * t.powf(s).cos();
    let g = |x: f64| ek_int_numeric(f, x, int_ord, ekp, &opts).unwrap_or(f64::NAN);
    let gp = |x: f64| ek_int_numeric(tf, x, int_ord, ekp, &opts).unwrap_or(f64::NAN) / x;
    let mut inv: f64 = 0.0;
    for &x in &xs {
        let d = ok_or(ek_caputo_numeric(g, gp, x, ok_or(EkOrder::left_caputo(mu))?, ekp, &opts))?;
        inv = inv.max(rel(d, f(x)));
    }

    // integration by parts with g(b) = 0 and f a Müntz sum, so the boundary term vanishes
    let big_b = ekp.big_b();
    let fp = [(1.0, 0.75), (-0.5, 1.75)];
    let dscale: Vec<f64> = fp
        .iter()
        .map(|&(_, pw)| ek_monomial_closed(pw, EkOrder::left_derivative(mu).unwrap(), ekp).unwrap())
        .collect();
    let fsum = |x: f64| fp.iter().map(|&(c, pw)| c * x.powf(pw)).sum::<f64>();
    let dfsum = |x: f64| fp.iter().zip(&dscale).map(|(&(c, pw), d)| c * d * x.powf(pw)).sum::<f64>();
    let gfun = |x: f64| {
        let v = x.powf(s);
        v.powf(eta) * (big_b - v).powi(2) * (1.0 + v)
    };
    let gprime = |x: f64| {
        let v = x.powf(s);
        let dv = s * x.powf(s - 1.0);
        let h = (big_b - v).powi(2) * (1.0 + v);
        let dh = -2.0 * (big_b - v) * (1.0 + v) + (big_b - v).powi(2);
        (eta * v.powf(eta - 1.0) * h + v.powf(eta) * dh) * dv
    };
    // both integrands are x^{sigma-1} times smooth functions of v on [0, B]
    let lhs = common::gauss_legendre(|v: f64| {
        let x = v.powf(1.0 / s);
        gfun(x) * dfsum(x) / s
    }, 0.0, big_b, 16);
    let cap = ok_or(EkOrder::right_caputo(mu))?;
    let rule = ok_or(gjm_base_rule(40, 1.0 - mu, 0.0, s, 1.0))?;
    let mut rhs = 0.0;
    for ((&x, &w), &gap) in rule.nodes.iter().zip(&rule.weights).zip(rule.gaps()) {
        let cd = ok_or(ek_caputo_numeric(gfun, gprime, x, cap, ekp, &NumericOptions::default().with_tail_power(1.0)))?;
        rhs += w * fsum(x) * cd / gap.powf(1.0 - mu);
    }
    let ibp = rel(lhs, rhs);

    let detail = format!("semigroup {semi:.1e} (tol 1e-7); left inverse {inv:.1e} (tol 1e-8); integration by parts {ibp:.1e} (tol 1e-7)");
    if semi <= 1e-7 && inv <= 1e-8 && ibp <= 1e-7 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("orthogonality of both kinds", gram_orthogonality),
        ("Sturm-Liouville eigenrelation", eigenrelation),
        ("quadrature exactness", quadrature_exactness),
        ("steady fractional ODE", steady_ode),
        ("fractional diffusion", fractional_diffusion),
        ("Burgers exponential decay", burgers),
        ("projection rates", projection_rates),
        ("eigenvalue asymptotics", eigen_asymptotics),
        ("EK calculus identities", ek_identities),
    ];
    let results: Vec<(usize, &str, Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .map(|(i, &(name, run))| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let out = run();
                    (i + 1, name, out, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (0, "panicked", Err("criterion panicked".into()), 0.0)))
            .collect()
    });
    let mut failed = 0;
    for (i, name, out, secs) in &results {
        match out {
            Ok(d) => println!("PASS criterion {i} ({name}, {secs:.1} s): {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {i} ({name}, {secs:.1} s): {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
