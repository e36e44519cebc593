//! Spectral collocation solvers built on Jacobi-Müntz bases.
//!
//! All solvers collocate at the base Gauss-Jacobi-Müntz nodes `x_j^{(alpha, beta, sigma)}`.
//!
//! * [`solve_steady_ode`]: `K2 D^mu y + K1 y = f` with a first-kind basis.
//! * [`solve_muntz_monomial_ode`]: the same problem in the raw monomials `x^{lambda_k}`.
//! * [`solve_fractional_diffusion`]: `u_t = d(x, t) D^mu u + s(x, t)` by the method of lines.
//! * [`solve_burgers`]: `u_t = eps u_xx - u u_x + s(x, t)` with a second-kind basis.

use crate::ek::{ek_jmf_derivative, ek_monomial_closed, EkOrder, EkParams};
use crate::error::{invalid, Error, Result};
use crate::ivp::{dp54_integrate, DpOptions, IvpProblem, Trajectory};
use crate::jmf::{jmf_ordinary_deriv, jmf_recurrence_batch, JmfKind, JmfParams, SpectralCoeffs};
use crate::linalg::{condition_number, DenseMatrix, LuDecomposition};
use crate::quadrature::gjm_base_rule;

/// How steady collocation systems are solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinearSolver {
    /// Backward-stable LU with partial pivoting.
    #[default]
    Lu,
    /// `a = A^{-1} F` with an explicitly formed inverse. Kept for comparisons:
    /// on the raw monomial system it amplifies rounding errors enormously.
    ExplicitInverse,
}

/// Scalar data shared by the model problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub k1: f64,
    pub k2: f64,
    /// Exponent of the manufactured solutions `x^{sigma nu}`.
    pub nu: f64,
    /// Burgers viscosity.
    pub epsilon: f64,
    pub t_final: f64,
    pub solver: LinearSolver,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self { k1: 1.0, k2: 1.0, nu: 3.0, epsilon: 0.1, t_final: 1.0, solver: LinearSolver::Lu }
    }
}

impl ExperimentConfig {
    pub fn check(&self) -> Result<()> {
        let vals = [self.k1, self.k2, self.nu, self.epsilon, self.t_final];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(invalid("experiment configuration must be finite"));
        }
        if !(self.t_final > 0.0) {
            return Err(invalid(format!("final time must be positive, got {}", self.t_final)));
        }
        Ok(())
    }
}

/// `sum_i c_i x^{p_i}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MuntzSum {
    pub terms: Vec<(f64, f64)>,
}

impl MuntzSum {
    pub fn new(terms: Vec<(f64, f64)>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(c, p)| if c == 0.0 { 0.0 } else { c * x.powf(p) }).sum()
    }
}

/// The manufactured solution `x^{sigma nu} + 7 x^{2 sigma nu}` of the steady example.
pub fn steady_exact(nu: f64, sigma: f64) -> MuntzSum {
    MuntzSum::new(vec![(1.0, sigma * nu), (7.0, 2.0 * sigma * nu)])
}

/// Right-hand side `f = K2 D^mu y + K1 y` for a Müntz-sum solution `y`,
/// itself a Müntz sum with the same exponents.
pub fn manufactured_rhs(exact: &MuntzSum, cfg: &ExperimentConfig, p: &JmfParams) -> Result<MuntzSum> {
    let ord = EkOrder::left_derivative(p.mu)?;
    let ekp = p.ek_params();
    let mut terms = Vec::with_capacity(exact.terms.len());
    for &(c, pw) in &exact.terms {
        let d = if cfg.k2 == 0.0 { 0.0 } else { ek_monomial_closed(pw, ord, ekp)? };
        terms.push((c * (cfg.k2 * d + cfg.k1), pw));
    }
    Ok(MuntzSum::new(terms))
}

/// Raw Müntz monomials `x^{lambda_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuntzBasis {
    pub exponents: Vec<f64>,
    pub b: f64,
}

impl MuntzBasis {
    pub fn new(exponents: Vec<f64>, b: f64) -> Result<Self> {
        if exponents.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("Müntz exponents must be strictly increasing"));
        }
        if !(b > 0.0) {
            return Err(invalid("b must be positive"));
        }
        Ok(Self { exponents, b })
    }

    /// Exponents `sigma (beta - eta - mu + k)`, `k = 0..=n`, matching a first-kind family.
    pub fn for_params(n: usize, p: &JmfParams) -> Self {
        let exponents = (0..=n).map(|k| p.sigma * (p.beta - p.eta - p.mu + k as f64)).collect();
        Self { exponents, b: p.b }
    }
}

/// Mass and fractional differentiation matrices of a first-kind basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSystem {
    pub nodes: Vec<f64>,
    /// `m_{jk} = J_k(x_j)`.
    pub mass: DenseMatrix,
    /// `d_{jk} = (D^mu J_k)(x_j)` in closed form.
    pub dmu: DenseMatrix,
    pub params: JmfParams,
}

/// Collocation nodes `x_j^{(alpha, beta, sigma)}`, `j = 0..=n`.
pub fn collocation_nodes(n: usize, p: &JmfParams) -> Result<Vec<f64>> {
    Ok(gjm_base_rule(n, p.alpha, p.beta, p.sigma, p.b)?.nodes)
}

fn basis_matrix(nodes: &[f64], n: usize, p: &JmfParams) -> Result<DenseMatrix> {
    let mut m = DenseMatrix::zeros(nodes.len(), n + 1);
    for (j, &x) in nodes.iter().enumerate() {
        for (k, v) in jmf_recurrence_batch(n, p, x)?.into_iter().enumerate() {
            m[(j, k)] = v;
        }
    }
    Ok(m)
}

/// Assembles `M` and `D^mu` for a first-kind family of degree `n`.
pub fn build_collocation_system(n: usize, p: &JmfParams) -> Result<CollocationSystem> {
    if p.kind != JmfKind::First {
        return Err(invalid("the fractional collocation system uses a first-kind basis"));
    }
    p.check_common()?;
    let nodes = collocation_nodes(n, p)?;
    let mass = basis_matrix(&nodes, n, p)?;
    let (_, shifted) = ek_jmf_derivative(JmfKind::First, 0, p)?;
    let shifted_vals = basis_matrix(&nodes, n, &shifted)?;
    let mut dmu = DenseMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let (scale, _) = ek_jmf_derivative(JmfKind::First, k, p)?;
        for j in 0..=n {
            dmu[(j, k)] = scale * shifted_vals[(j, k)];
        }
    }
    LuDecomposition::new(&mass)?;
    Ok(CollocationSystem { nodes, mass, dmu, params: *p })
}

/// Result of a steady collocation solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadySolution {
    pub coeffs: Vec<f64>,
    pub nodes: Vec<f64>,
    /// `M a`.
    pub nodal_values: Vec<f64>,
    /// Spectral condition number of `K2 D^mu + K1 M`.
    pub cond: f64,
}

fn steady_solve(mass: &DenseMatrix, dmu: &DenseMatrix, nodes: Vec<f64>, cfg: &ExperimentConfig, f: &dyn Fn(f64) -> f64) -> Result<SteadySolution> {
    let a_mat = dmu.scaled(cfg.k2).add_scaled(cfg.k1, mass)?;
    let rhs: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("right-hand side at a collocation node".into()));
    }
    let lu = LuDecomposition::new(&a_mat)?;
    let coeffs = match cfg.solver {
        LinearSolver::Lu => lu.solve(&rhs)?,
        LinearSolver::ExplicitInverse => lu.inverse()?.matvec(&rhs)?,
    };
    let nodal_values = mass.matvec(&coeffs)?;
    let cond = condition_number(&a_mat);
    Ok(SteadySolution { coeffs, nodes, nodal_values, cond })
}

/// Solves `K2 D^mu_{sigma,eta} y + K1 y = f` in the first-kind basis of degree `n`.
pub fn solve_steady_ode(cfg: &ExperimentConfig, n: usize, p: &JmfParams, f: &dyn Fn(f64) -> f64) -> Result<(SpectralCoeffs, SteadySolution)> {
    let sys = build_collocation_system(n, p)?;
    let sol = steady_solve(&sys.mass, &sys.dmu, sys.nodes, cfg, f)?;
    let sc = SpectralCoeffs::new(*p, sol.coeffs.clone())?;
    Ok((sc, sol))
}

/// Solves the same steady problem with the raw monomials of `basis`,
/// collocated at the nodes of `p`. Differentiation uses the monomial closed form.
pub fn solve_muntz_monomial_ode(cfg: &ExperimentConfig, n: usize, basis: &MuntzBasis, p: &JmfParams, f: &dyn Fn(f64) -> f64) -> Result<SteadySolution> {
    if basis.exponents.len() != n + 1 {
        return Err(invalid(format!("basis has {} exponents, expected {}", basis.exponents.len(), n + 1)));
    }
    let nodes = collocation_nodes(n, p)?;
    let ord = EkOrder::left_derivative(p.mu)?;
    let ekp = EkParams::new(p.sigma, p.eta, basis.b)?;
    let scales = basis
        .exponents
        .iter()
        .map(|&l| ek_monomial_closed(l, ord, ekp))
        .collect::<Result<Vec<_>>>()?;
    let mass = DenseMatrix::from_fn(n + 1, n + 1, |j, k| nodes[j].powf(basis.exponents[k]));
    let dmu = DenseMatrix::from_fn(n + 1, n + 1, |j, k| scales[k] * mass[(j, k)]);
    steady_solve(&mass, &dmu, nodes, cfg, f)
}

/// Method-of-lines solution of a fractional diffusion problem.
#[derive(Debug, Clone)]
pub struct DiffusionSolution {
    pub system: CollocationSystem,
    /// Coefficient vectors `a(t)`.
    pub trajectory: Trajectory,
}

impl DiffusionSolution {
    /// `M a` for a recorded state.
    pub fn nodal(&self, state: &[f64]) -> Result<Vec<f64>> {
        self.system.mass.matvec(state)
    }

    /// Nodal values at the final time.
    pub fn final_nodal(&self) -> Result<Vec<f64>> {
        self.nodal(self.trajectory.final_state())
    }
}

/// Solves `u_t = d(x, t) D^mu u + s(x, t)`, `u(x, 0) = f(x)` on `[0, t_final]`.
pub fn solve_fractional_diffusion<D, S, F>(
    cfg: &ExperimentConfig,
    n: usize,
    p: &JmfParams,
    d: D,
    s: S,
    f: F,
    opts: &DpOptions,
) -> Result<DiffusionSolution>
where
    D: Fn(f64, f64) -> f64,
    S: Fn(f64, f64) -> f64,
    F: Fn(f64) -> f64,
{
    cfg.check()?;
    let system = build_collocation_system(n, p)?;
    let lu = LuDecomposition::new(&system.mass)?;
    let f_nodes: Vec<f64> = system.nodes.iter().map(|&x| f(x)).collect();
    let a0 = lu.solve(&f_nodes)?;
    let nodes = system.nodes.clone();
    let dmu = &system.dmu;
    let rhs = |t: f64, a: &[f64], out: &mut [f64]| {
        let da = dmu.matvec(a).expect("dimension fixed at construction");
        let r: Vec<f64> = nodes
            .iter()
            .zip(&da)
            .map(|(&x, &dv)| d(x, t) * dv + s(x, t))
            .collect();
        match lu.solve(&r) {
            Ok(v) => out.copy_from_slice(&v),
            Err(_) => out.fill(f64::NAN),
        }
    };
    let trajectory = dp54_integrate(&IvpProblem::new(rhs, 0.0, cfg.t_final, a0), opts)?;
    Ok(DiffusionSolution { system, trajectory })
}

/// Collocation matrices of a second-kind basis for Burgers' equation.
#[derive(Debug, Clone, PartialEq)]
pub struct BurgersSystem {
    pub nodes: Vec<f64>,
    pub mass: DenseMatrix,
    /// First ordinary derivatives `J_k'(x_j)`.
    pub d1: DenseMatrix,
    /// Second ordinary derivatives `J_k''(x_j)`.
    pub d2: DenseMatrix,
    pub params: JmfParams,
}

pub fn build_burgers_system(n: usize, p: &JmfParams) -> Result<BurgersSystem> {
    if p.kind != JmfKind::Second {
        return Err(invalid("Burgers' equation uses a second-kind basis"));
    }
    p.check_common()?;
    let nodes = collocation_nodes(n, p)?;
    let mass = basis_matrix(&nodes, n, p)?;
    let mut d1 = DenseMatrix::zeros(n + 1, n + 1);
    let mut d2 = DenseMatrix::zeros(n + 1, n + 1);
    for (j, &x) in nodes.iter().enumerate() {
        for k in 0..=n {
            d1[(j, k)] = jmf_ordinary_deriv(k, p, x, 1)?;
            d2[(j, k)] = jmf_ordinary_deriv(k, p, x, 2)?;
        }
    }
    Ok(BurgersSystem { nodes, mass, d1, d2, params: *p })
}

#[derive(Debug, Clone)]
pub struct BurgersSolution {
    pub system: BurgersSystem,
    pub trajectory: Trajectory,
}

impl BurgersSolution {
    /// The approximation at the final time as a spectral expansion.
    pub fn final_coeffs(&self) -> Result<SpectralCoeffs> {
        SpectralCoeffs::new(self.system.params, self.trajectory.final_state().to_vec())
    }
}

/// Solves `u_t = eps u_xx - u u_x + s(x, t)`, `u(x, 0) = f(x)`, with homogeneous
/// boundary values built into the second-kind basis. The nonlinear term is
/// formed pointwise at the nodes.
pub fn solve_burgers<S, F>(cfg: &ExperimentConfig, n: usize, p: &JmfParams, s: S, f: F, opts: &DpOptions) -> Result<BurgersSolution>
where
    S: Fn(f64, f64) -> f64,
    F: Fn(f64) -> f64,
{
    cfg.check()?;
    let system = build_burgers_system(n, p)?;
    let lu = LuDecomposition::new(&system.mass)?;
    let f_nodes: Vec<f64> = system.nodes.iter().map(|&x| f(x)).collect();
    let a0 = lu.solve(&f_nodes)?;
    let eps = cfg.epsilon;
    let sys = &system;
    let rhs = |t: f64, a: &[f64], out: &mut [f64]| {
        let u = sys.mass.matvec(a).expect("dimension fixed at construction");
        let ux = sys.d1.matvec(a).expect("dimension fixed at construction");
        let uxx = sys.d2.matvec(a).expect("dimension fixed at construction");
        let r: Vec<f64> = (0..u.len())
            .map(|j| eps * uxx[j] - u[j] * ux[j] + s(sys.nodes[j], t))
            .collect();
        match lu.solve(&r) {
            Ok(v) => out.copy_from_slice(&v),
            Err(_) => out.fill(f64::NAN),
        }
    };
    let trajectory = dp54_integrate(&IvpProblem::new(rhs, 0.0, cfg.t_final, a0), opts)?;
    Ok(BurgersSolution { system, trajectory })
}

/// The two manufactured Burgers solutions on `[0, 1] x [0, T]`,
/// `u = sqrt(1 - sqrt x) sqrt x g(sqrt x) cos(t^2)` with `g = sin` or `g = cos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BurgersCase {
    Sine,
    Cosine,
}

impl BurgersCase {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Self::Sine),
            2 => Ok(Self::Cosine),
            _ => Err(invalid(format!("Burgers case must be 1 or 2, got {i}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::Sine => 1,
            Self::Cosine => 2,
        }
    }

    /// Second-kind parameters whose prefactor matches the solution's endpoint behaviour.
    pub fn default_params(self) -> JmfParams {
        let (beta, eta) = match self {
            Self::Sine => (2.0, 2.0),
            Self::Cosine => (1.0, 1.0),
        };
        JmfParams { kind: JmfKind::Second, alpha: 0.5, beta, mu: 1.0, sigma: 0.5, eta, b: 1.0 }
    }

    /// `q(v)`, `q'(v)`, `q''(v)` for `q = v sin v` or `q = v cos v`.
    fn q(self, v: f64) -> (f64, f64, f64) {
        let (s, c) = v.sin_cos();
        match self {
            Self::Sine => (v * s, s + v * c, 2.0 * c - v * s),
            Self::Cosine => (v * c, c - v * s, -2.0 * s - v * c),
        }
    }

    /// `G(v) = sqrt(1 - v) q(v)` and its first two derivatives.
    fn g(self, v: f64) -> (f64, f64, f64) {
        let (q, dq, ddq) = self.q(v);
        let r = (1.0 - v).sqrt();
        let dh = -0.5 / r;
        let ddh = -0.25 / (r * r * r);
        (r * q, dh * q + r * dq, ddh * q + 2.0 * dh * dq + r * ddq)
    }

    pub fn exact(self, x: f64, t: f64) -> f64 {
        let v = x.sqrt();
        self.g(v).0 * (t * t).cos()
    }

    pub fn initial(self, x: f64) -> f64 {
        self.exact(x, 0.0)
    }

    /// Source term `u_t - eps u_xx + u u_x` for the exact solution, for `0 < x < 1`.
    pub fn source(self, x: f64, t: f64, eps: f64) -> f64 {
        let v = x.sqrt();
        let (g, dg, ddg) = self.g(v);
        let (st, ct) = (t * t).sin_cos();
        let u = g * ct;
        let ut = -2.0 * t * st * g;
        let ux = dg / (2.0 * v) * ct;
        let uxx = (ddg / (4.0 * v * v) - dg / (4.0 * v * v * v)) * ct;
        ut - eps * uxx + u * ux
    }
}

/// Discrete L2 and max errors on the uniform interior grid `x_i = (i + 1/2) b / m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridErrors {
    pub e2: f64,
    pub einf: f64,
}

/// Smallest grid accepted by [`grid_error_report`].
pub const MIN_GRID: usize = 64;

pub fn grid_error_report<N, E>(numeric: N, exact: E, b: f64, grid_size: usize) -> Result<GridErrors>
where
    N: Fn(f64) -> Result<f64>,
    E: Fn(f64) -> f64,
{
    if grid_size < MIN_GRID {
        return Err(invalid(format!("grid size must be at least {MIN_GRID}")));
    }
    let h = b / grid_size as f64;
    let mut sq = 0.0;
    let mut einf: f64 = 0.0;
    for i in 0..grid_size {
        let x = (i as f64 + 0.5) * h;
        let e = (numeric(x)? - exact(x)).abs();
        sq += e * e;
        einf = einf.max(e);
    }
    let e2 = (h * sq).sqrt();
    if !(e2.is_finite() && einf.is_finite()) {
        return Err(Error::NonFinite("grid error".into()));
    }
    Ok(GridErrors { e2, einf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jmf::jmf_eval;
    use crate::orthopoly::gamma_fn;
    use approx::assert_relative_eq;

    fn fig3() -> JmfParams {
        JmfParams::new(JmfKind::First, 0.5, 1.5, 1.5, 0.5, -3.0, 1.0).unwrap()
    }

    #[test]
    fn single_node_system() {
        let p = fig3();
        let sys = build_collocation_system(0, &p).unwrap();
        assert_eq!(sys.mass.rows(), 1);
        assert_relative_eq!(sys.mass[(0, 0)], sys.nodes[0].powf(1.5), max_relative = 1e-14);
    }

    #[test]
    fn rhs_scale_example() {
        let p = fig3();
        let cfg = ExperimentConfig { k1: 0.0, ..ExperimentConfig::default() };
        let f = manufactured_rhs(&MuntzSum::new(vec![(1.0, 1.5)]), &cfg, &p).unwrap();
        assert_relative_eq!(f.terms[0].0, gamma_fn(2.5).unwrap(), max_relative = 1e-14);
        let cfg0 = ExperimentConfig { k2: 0.0, k1: 2.0, ..cfg };
        let f0 = manufactured_rhs(&steady_exact(3.0, 0.5), &cfg0, &p).unwrap();
        assert_relative_eq!(f0.eval(0.3), 2.0 * steady_exact(3.0, 0.5).eval(0.3), max_relative = 1e-14);
    }

    #[test]
    fn muntz_basis_checks() {
        assert!(MuntzBasis::new(vec![1.0, 1.0], 1.0).is_err());
        let b = MuntzBasis::for_params(2, &fig3());
        assert_eq!(b.exponents, vec![1.5, 2.0, 2.5]);
    }

    #[test]
    fn muntz_monomial_exact_span() {
        let p = fig3();
        let cfg = ExperimentConfig::default();
        // y = x^{1.5} + 7 x^{2.5} lies in the span of x^{1.5}, x^{2}, x^{2.5}
        let exact = MuntzSum::new(vec![(1.0, 1.5), (7.0, 2.5)]);
        let f = manufactured_rhs(&exact, &cfg, &p).unwrap();
        let basis = MuntzBasis::for_params(2, &p);
        let sol = solve_muntz_monomial_ode(&cfg, 2, &basis, &p, &|x| f.eval(x)).unwrap();
        assert_relative_eq!(sol.coeffs[0], 1.0, max_relative = 1e-10);
        assert!(sol.coeffs[1].abs() < 1e-9);
        assert_relative_eq!(sol.coeffs[2], 7.0, max_relative = 1e-10);
    }

    #[test]
    fn steady_pure_mass_is_interpolation() {
        let p = fig3();
        let cfg = ExperimentConfig { k1: 1.0, k2: 0.0, ..ExperimentConfig::default() };
        let u = |x: f64| jmf_eval(3, &p, x).unwrap() - 2.0 * jmf_eval(1, &p, x).unwrap();
        let (sc, sol) = solve_steady_ode(&cfg, 5, &p, &u).unwrap();
        for (k, a) in sc.coeffs.iter().enumerate() {
            let e = match k { 1 => -2.0, 3 => 1.0, _ => 0.0 };
            assert!((a - e).abs() < 1e-10, "k={k}");
        }
        assert!(sol.cond >= 1.0);
    }

    #[test]
    fn burgers_zero_data_stays_zero() {
        let p = BurgersCase::Sine.default_params();
        let cfg = ExperimentConfig { t_final: 0.5, ..ExperimentConfig::default() };
        let sol = solve_burgers(&cfg, 4, &p, |_, _| 0.0, |_| 0.0, &DpOptions::default()).unwrap();
        assert!(sol.trajectory.final_state().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn burgers_source_matches_differences() {
        let eps = 0.1;
        for case in [BurgersCase::Sine, BurgersCase::Cosine] {
            let (x, t, h): (f64, f64, f64) = (0.37, 1.3, 1e-4);
            let u = |x: f64, t: f64| case.exact(x, t);
            let ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            let ux = (u(x + h, t) - u(x - h, t)) / (2.0 * h);
            let uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            let fd = ut - eps * uxx + u(x, t) * ux;
            assert!((case.source(x, t, eps) - fd).abs() < 1e-5, "{case:?}");
        }
    }

    #[test]
    fn grid_errors() {
        let e = grid_error_report(|x| Ok(x * x), |x| x * x, 1.0, 64).unwrap();
        assert_eq!((e.e2, e.einf), (0.0, 0.0));
        let e = grid_error_report(|x| Ok(x + 0.25), |x| x, 1.0, 100).unwrap();
        assert_relative_eq!(e.einf, 0.25, max_relative = 1e-12);
        assert_relative_eq!(e.e2, 0.25, max_relative = 1e-12);
        assert!(grid_error_report(Ok, |x| x, 1.0, 10).is_err());
    }
}
