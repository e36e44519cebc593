//! Erdélyi-Kober fractional integrals and derivatives on `(0, b)`.
//!
//! With `v = t^sigma`, `V = x^sigma` and `B = b^sigma` the four operators read
//!
//! ```text
//! left integral   x^{-sigma(eta+mu)} / Γ(mu)  ∫_0^V (V - v)^{mu-1} v^eta f dv
//! right integral  x^{sigma eta} / Γ(mu)       ∫_V^B (v - V)^{mu-1} v^{-(eta+mu)} f dv
//! left Caputo     x^{-sigma eta} / Γ(1-mu)    ∫_0^V (V - v)^{-mu} d[v^{eta+mu} f]
//! right Caputo   -x^{sigma(eta+mu)} / Γ(1-mu) ∫_V^B (v - V)^{-mu} d[v^{-eta} f]
//! ```
//!
//! Closed forms act on monomials and on [`MappedJacobi`] forms. The numeric
//! routines map each integral onto `[-1, 1]` and absorb the kernel singularity,
//! plus an optional algebraic endpoint behaviour of `f`, into a Gauss-Jacobi weight.

use crate::error::{domain, invalid, Error, Result};
use crate::jmf::{JmfKind, JmfParams};
use crate::orthopoly::{gamma_ratio, gauss_jacobi_rule, jacobi_eval, ln_gamma, JacobiParams};

/// Map exponent, shift and right endpoint shared by every operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EkParams {
    pub sigma: f64,
    pub eta: f64,
    pub b: f64,
}

impl EkParams {
    pub fn new(sigma: f64, eta: f64, b: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid(format!("sigma must be positive, got {sigma}")));
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(invalid(format!("b must be positive, got {b}")));
        }
        if !eta.is_finite() {
            return Err(invalid("eta must be finite"));
        }
        Ok(Self { sigma, eta, b })
    }

    /// Same map and endpoint with a different shift.
    pub fn with_eta(&self, eta: f64) -> Self {
        Self { eta, ..*self }
    }

    pub fn big_b(&self) -> f64 {
        self.b.powf(self.sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EkKind {
    /// Fractional integral.
    Integral,
    /// Riemann-Liouville type derivative.
    Derivative,
    /// Caputo type derivative.
    Caputo,
}

/// Order and flavour of an operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EkOrder {
    pub mu: f64,
    pub side: Side,
    pub kind: EkKind,
}

impl EkOrder {
    pub fn new(mu: f64, side: Side, kind: EkKind) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(invalid(format!("order mu must be positive, got {mu}")));
        }
        Ok(Self { mu, side, kind })
    }

    pub fn left_integral(mu: f64) -> Result<Self> {
        Self::new(mu, Side::Left, EkKind::Integral)
    }

    pub fn right_integral(mu: f64) -> Result<Self> {
        Self::new(mu, Side::Right, EkKind::Integral)
    }

    pub fn left_derivative(mu: f64) -> Result<Self> {
        Self::new(mu, Side::Left, EkKind::Derivative)
    }

    pub fn right_derivative(mu: f64) -> Result<Self> {
        Self::new(mu, Side::Right, EkKind::Derivative)
    }

    pub fn left_caputo(mu: f64) -> Result<Self> {
        Self::new(mu, Side::Left, EkKind::Caputo)
    }

    pub fn right_caputo(mu: f64) -> Result<Self> {
        Self::new(mu, Side::Right, EkKind::Caputo)
    }

    fn is_derivative(&self) -> bool {
        matches!(self.kind, EkKind::Derivative | EkKind::Caputo)
    }
}

/// Default number of Gauss-Jacobi nodes for the numeric operators.
pub const DEFAULT_NODES: usize = 64;

/// Environment variable that overrides [`DEFAULT_NODES`].
pub const NODES_ENV: &str = "MUNTZ_QUAD_NODES";

/// Controls for the quadrature-based operators.
///
/// `lead_power` declares that `f(t) ~ t^p` near `t = 0` and `tail_power` that
/// `f ~ (b^sigma - t^sigma)^q` near `t = b`. These factors are divided out of
/// `f` and moved into the quadrature weight, so the remaining integrand is smooth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub nodes: usize,
    pub lead_power: f64,
    pub tail_power: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self { nodes: DEFAULT_NODES, lead_power: 0.0, tail_power: 0.0 }
    }
}

impl NumericOptions {
    /// Defaults with the node count taken from `MUNTZ_QUAD_NODES` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(NODES_ENV) {
            let nodes: usize = raw
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{NODES_ENV}={raw:?} is not a node count")))?;
            if nodes < 2 {
                return Err(invalid(format!("{NODES_ENV} must be at least 2")));
            }
            opts.nodes = nodes;
        }
        Ok(opts)
    }

    pub fn with_nodes(self, nodes: usize) -> Self {
        Self { nodes, ..self }
    }

    pub fn with_lead_power(self, lead_power: f64) -> Self {
        Self { lead_power, ..self }
    }

    pub fn with_tail_power(self, tail_power: f64) -> Self {
        Self { tail_power, ..self }
    }
}

/// `b^sigma - x^sigma` without cancellation near `x = b`.
pub(crate) fn gap_to_end(x: f64, sigma: f64, b: f64) -> f64 {
    -b.powf(sigma) * (sigma * (x / b).ln()).exp_m1()
}

/// `2 (x / b)^sigma - 1`.
pub(crate) fn unit_map(x: f64, sigma: f64, b: f64) -> f64 {
    2.0 * (x / b).powf(sigma) - 1.0
}

/// `x^a (b^sigma - x^sigma)^r` on `[0, b]`, evaluated in log space.
pub(crate) fn power_prefactor(x: f64, a: f64, r: f64, sigma: f64, b: f64) -> Result<f64> {
    let mut log = 0.0;
    if a != 0.0 {
        if x == 0.0 {
            return if a > 0.0 { Ok(0.0) } else { Err(Error::Singular(x)) };
        }
        log += a * x.ln();
    }
    if r != 0.0 {
        if x == b {
            return if r > 0.0 { Ok(0.0) } else { Err(Error::Singular(x)) };
        }
        log += r * gap_to_end(x, sigma, b).ln();
    }
    Ok(log.exp())
}

fn check_point(x: f64, side: Side, b: f64) -> Result<()> {
    let ok = match side {
        Side::Left => x > 0.0 && x <= b,
        Side::Right => x >= 0.0 && x < b,
    };
    if ok {
        Ok(())
    } else {
        let range = if side == Side::Left { "(0, b]" } else { "[0, b)" };
        Err(domain(format!("x = {x} outside {range} with b = {b}")))
    }
}

fn sample(f: f64, t: f64) -> Result<f64> {
    if f.is_finite() {
        Ok(f)
    } else {
        Err(Error::NonFinite(format!("integrand sample at t = {t}")))
    }
}

/// Scale `s` with `op[x^p] = s x^p` for a left operator.
///
/// Caputo and Riemann-Liouville derivatives agree on `x^p` whenever
/// `p / sigma + eta + mu > 0`; at zero the Caputo derivative vanishes.
pub fn ek_monomial_closed(power: f64, ord: EkOrder, p: EkParams) -> Result<f64> {
    if ord.side != Side::Left {
        return Err(invalid("monomial closed forms exist only for left operators"));
    }
    let c = power / p.sigma + p.eta + 1.0;
    match ord.kind {
        EkKind::Integral => {
            if c <= 0.0 {
                return Err(domain(format!(
                    "left integral of x^{power} diverges (p/sigma + eta + 1 = {c})"
                )));
            }
            gamma_ratio(c, c + ord.mu)
        }
        EkKind::Derivative => gamma_ratio(c + ord.mu, c),
        EkKind::Caputo => {
            let lead = c + ord.mu - 1.0;
            if lead.abs() <= 1e-12 {
                Ok(0.0)
            } else if lead < 0.0 {
                Err(domain(format!("Caputo derivative of x^{power} is not integrable")))
            } else {
                gamma_ratio(c + ord.mu, c)
            }
        }
    }
}

/// Scale and Jacobi-exponent shift of an operator acting on its canonical
/// mapped-Jacobi form (see [`MappedJacobi::canonical_exponents`]).
pub fn ek_jacobi_closed(
    n: usize,
    alpha: f64,
    beta: f64,
    ord: EkOrder,
    _p: EkParams,
) -> Result<(f64, f64, f64)> {
    let nf = n as f64;
    let mu = ord.mu;
    match (ord.side, ord.is_derivative()) {
        (Side::Left, false) => Ok((gamma_ratio(nf + beta + 1.0, nf + beta + mu + 1.0)?, alpha - mu, beta + mu)),
        (Side::Left, true) => Ok((gamma_ratio(nf + beta + 1.0, nf + beta - mu + 1.0)?, alpha + mu, beta - mu)),
        (Side::Right, false) => Ok((gamma_ratio(nf + alpha + 1.0, nf + alpha + mu + 1.0)?, alpha + mu, beta - mu)),
        (Side::Right, true) => Ok((gamma_ratio(nf + alpha + 1.0, nf + alpha - mu + 1.0)?, alpha - mu, beta + mu)),
    }
}

/// The function `c x^a (b^sigma - x^sigma)^r P_n^{(alpha, beta)}(2 (x/b)^sigma - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedJacobi {
    pub coeff: f64,
    pub n: usize,
    pub jacobi: JacobiParams,
    pub x_exp: f64,
    pub tail_exp: f64,
    pub sigma: f64,
    pub b: f64,
}

const CANONICAL_TOL: f64 = 1e-12;

impl MappedJacobi {
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.b).contains(&x) {
            return Err(domain(format!("x = {x} outside [0, {}]", self.b)));
        }
        let pre = power_prefactor(x, self.x_exp, self.tail_exp, self.sigma, self.b)?;
        if pre == 0.0 {
            return Ok(0.0);
        }
        let y = unit_map(x, self.sigma, self.b);
        Ok(self.coeff * pre * jacobi_eval(self.n, self.jacobi, y))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { coeff: self.coeff * c, ..*self }
    }

    /// Multiplies by `x^a (b^sigma - x^sigma)^r`.
    pub fn mul_power(&self, a: f64, r: f64) -> Self {
        Self { x_exp: self.x_exp + a, tail_exp: self.tail_exp + r, ..*self }
    }

    /// Prefactor exponents `(a, r)` the closed form of `ord` requires.
    pub fn canonical_exponents(&self, ord: EkOrder, eta: f64) -> (f64, f64) {
        let (s, a, b) = (self.sigma, self.jacobi.alpha, self.jacobi.beta);
        match (ord.side, ord.is_derivative()) {
            (Side::Left, false) => (s * (b - eta), 0.0),
            (Side::Left, true) => (s * (b - eta - ord.mu), 0.0),
            (Side::Right, false) => (s * (eta + ord.mu), a),
            (Side::Right, true) => (s * eta, a),
        }
    }

    /// Applies an operator in closed form. The form must already carry the
    /// canonical prefactor for `ord` at shift `eta`.
    pub fn apply(&self, ord: EkOrder, eta: f64) -> Result<Self> {
        let (a_req, r_req) = self.canonical_exponents(ord, eta);
        let close = |u: f64, v: f64| (u - v).abs() <= CANONICAL_TOL * u.abs().max(v.abs()).max(1.0);
        if !close(self.x_exp, a_req) || !close(self.tail_exp, r_req) {
            return Err(invalid(format!(
                "form x^{} (B - x^s)^{} is not canonical for this operator (needs x^{} (B - x^s)^{})",
                self.x_exp, self.tail_exp, a_req, r_req
            )));
        }
        let p = EkParams { sigma: self.sigma, eta, b: self.b };
        let (scale, oa, ob) = ek_jacobi_closed(self.n, self.jacobi.alpha, self.jacobi.beta, ord, p)?;
        let mu = ord.mu;
        let s = self.sigma;
        let (x_exp, tail_exp) = match (ord.side, ord.is_derivative()) {
            (Side::Left, _) => (self.x_exp, 0.0),
            (Side::Right, false) => (s * eta, self.tail_exp + mu),
            (Side::Right, true) => (s * (eta + mu), self.tail_exp - mu),
        };
        Ok(Self {
            coeff: self.coeff * scale,
            n: self.n,
            jacobi: JacobiParams::new(oa, ob),
            x_exp,
            tail_exp,
            sigma: s,
            b: self.b,
        })
    }
}

/// Closed-form EK derivative of a Jacobi-Müntz function: the left derivative
/// `D^mu_{sigma,eta}` for the first kind and the right derivative for the
/// second kind. Returns the scale and the parameters of the resulting function.
pub fn ek_jmf_derivative(kind: JmfKind, n: usize, jp: &JmfParams) -> Result<(f64, JmfParams)> {
    jp.check_common()?;
    let nf = n as f64;
    let (a, b, mu) = (jp.alpha, jp.beta, jp.mu);
    match kind {
        JmfKind::First => {
            let scale = gamma_ratio(nf + b + 1.0, nf + b - mu + 1.0)?;
            let out = JmfParams { alpha: a + mu, beta: b - mu, eta: jp.eta - mu, kind, ..*jp };
            Ok((scale, out))
        }
        JmfKind::Second => {
            let scale = gamma_ratio(nf + a + 1.0, nf + a - mu + 1.0)?;
            let out = JmfParams { alpha: a - mu, beta: b + mu, eta: jp.eta + mu, kind, ..*jp };
            Ok((scale, out))
        }
    }
}

/// Gauss-Jacobi nodes and weights, with a clear error for a non-integrable weight.
fn kernel_rule(nodes: usize, alpha: f64, beta: f64) -> Result<crate::orthopoly::JacobiRule> {
    if nodes == 0 {
        return Err(invalid("at least one quadrature node is required"));
    }
    let jp = JacobiParams::new(alpha, beta);
    if jp.check_orthogonal().is_err() {
        return Err(domain(format!(
            "integral diverges: endpoint exponents ({alpha}, {beta}) must exceed -1"
        )));
    }
    gauss_jacobi_rule(nodes - 1, jp)
}

/// EK fractional integral of `f` at `x` by singularity-absorbing Gauss-Jacobi quadrature.
pub fn ek_int_numeric<F: Fn(f64) -> f64>(
    f: F,
    x: f64,
    ord: EkOrder,
    p: EkParams,
    opts: &NumericOptions,
) -> Result<f64> {
    if ord.kind != EkKind::Integral {
        return Err(invalid("ek_int_numeric needs an integral order"));
    }
    check_point(x, ord.side, p.b)?;
    let (s, eta, mu) = (p.sigma, p.eta, ord.mu);
    let big_b = p.big_b();
    let ln_gmu = ln_gamma(mu)?;
    match ord.side {
        Side::Left => {
            let lead = opts.lead_power;
            let e = eta + lead / s;
            let rule = kernel_rule(opts.nodes, mu - 1.0, e)?;
            let v_end = x.powf(s);
            let mut acc = 0.0;
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                let v = 0.5 * v_end * (1.0 + node);
                let t = v.powf(1.0 / s);
                let mut g = sample(f(t), t)?;
                if lead != 0.0 {
                    g /= (lead / s * v.ln()).exp();
                }
                acc += w * g;
            }
            let ln_pre = -s * (eta + mu) * x.ln() - ln_gmu + (mu + e) * (0.5 * v_end).ln();
            Ok(ln_pre.exp() * acc)
        }
        Side::Right => {
            let q = opts.tail_power;
            let rule = kernel_rule(opts.nodes, q, mu - 1.0)?;
            let v_start = x.powf(s);
            let half_len = 0.5 * gap_to_end(x, s, p.b);
            let mut acc = 0.0;
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                let v = (v_start + half_len * (1.0 + node)).min(big_b);
                let t = v.powf(1.0 / s);
                let mut g = sample(f(t), t)? * (-(eta + mu) * v.ln()).exp();
                if q != 0.0 {
                    g /= (half_len * (1.0 - node)).powf(q);
                }
                acc += w * g;
            }
            let ln_pre = -ln_gmu + (mu + q) * half_len.ln();
            let xpow = power_prefactor(x, s * eta, 0.0, s, p.b)?;
            Ok(xpow * ln_pre.exp() * acc)
        }
    }
}

/// EK derivative of Caputo type, `0 < mu < 1`, given `f` and its derivative `f_prime`.
pub fn ek_caputo_numeric<F, G>(
    f: F,
    f_prime: G,
    x: f64,
    ord: EkOrder,
    p: EkParams,
    opts: &NumericOptions,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if ord.kind != EkKind::Caputo {
        return Err(invalid("ek_caputo_numeric needs a Caputo order"));
    }
    let mu = ord.mu;
    if !(mu > 0.0 && mu < 1.0) {
        return Err(domain(format!("Caputo order must lie in (0, 1), got {mu}")));
    }
    check_point(x, ord.side, p.b)?;
    let (s, eta) = (p.sigma, p.eta);
    let ln_g = ln_gamma(1.0 - mu)?;
    match ord.side {
        Side::Left => {
            // d/dv [v^{eta+mu} f] = v^{eta+mu-1} [(eta+mu) f + t f'(t) / sigma]
            let lead = eta + mu + opts.lead_power / s;
            let e = if lead.abs() <= 1e-12 { 0.0 } else { lead - 1.0 };
            let rule = kernel_rule(opts.nodes, -mu, e)?;
            let v_end = x.powf(s);
            let mut acc = 0.0;
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                let v = 0.5 * v_end * (1.0 + node);
                let t = v.powf(1.0 / s);
                let bracket = (eta + mu) * sample(f(t), t)? + t * sample(f_prime(t), t)? / s;
                acc += w * bracket * ((eta + mu - 1.0 - e) * v.ln()).exp();
            }
            let ln_pre = -s * eta * x.ln() - ln_g + (1.0 - mu + e) * (0.5 * v_end).ln();
            Ok(ln_pre.exp() * acc)
        }
        Side::Right => {
            // d/dv [v^{-eta} f] = v^{-eta-1} [-eta f + t f'(t) / sigma]
            let q = opts.tail_power;
            let r = if q > 0.0 { q - 1.0 } else { 0.0 };
            let rule = kernel_rule(opts.nodes, r, -mu)?;
            let v_start = x.powf(s);
            let half_len = 0.5 * gap_to_end(x, s, p.b);
            let mut acc = 0.0;
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                let v = v_start + half_len * (1.0 + node);
                let t = v.powf(1.0 / s);
                let bracket = -eta * sample(f(t), t)? + t * sample(f_prime(t), t)? / s;
                let mut g = bracket * ((-eta - 1.0) * v.ln()).exp();
                if r != 0.0 {
                    g /= (half_len * (1.0 - node)).powf(r);
                }
                acc += w * g;
            }
            let ln_pre = -ln_g + (1.0 - mu + r) * half_len.ln();
            let xpow = power_prefactor(x, s * (eta + mu), 0.0, s, p.b)?;
            Ok(-xpow * ln_pre.exp() * acc)
        }
    }
}
