//! Jacobi-Müntz functions of the first and second kinds.
//!
//! With `B = b^sigma` and `y = 2 (x/b)^sigma - 1`:
//!
//! ```text
//! first kind   J1_n(x) = x^{sigma(beta - eta - mu)} P_n^{(alpha, beta)}(y)
//! second kind  J2_n(x) = x^{sigma eta} (B - x^sigma)^alpha P_n^{(alpha, beta)}(y)
//! ```
//!
//! Both families are orthogonal on `(0, b)` and are eigenfunctions of fractional
//! Sturm-Liouville operators built from left and right Erdélyi-Kober derivatives.

use std::fmt;

use crate::ek::{gap_to_end, power_prefactor, unit_map, EkParams, MappedJacobi};
use crate::error::{domain, invalid, Error, Result};
use crate::orthopoly::{gamma_ratio, jacobi_deriv, jacobi_eval, jacobi_norm, recurrence_coeffs, JacobiParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JmfKind {
    First,
    Second,
}

impl JmfKind {
    pub fn index(self) -> u8 {
        match self {
            JmfKind::First => 1,
            JmfKind::Second => 2,
        }
    }
}

impl TryFrom<u8> for JmfKind {
    type Error = Error;
    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(JmfKind::First),
            2 => Ok(JmfKind::Second),
            _ => Err(invalid(format!("kind must be 1 or 2, got {k}"))),
        }
    }
}

impl fmt::Display for JmfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Parameters identifying one Jacobi-Müntz family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JmfParams {
    pub kind: JmfKind,
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub sigma: f64,
    pub eta: f64,
    pub b: f64,
}

/// Outcome of one parameter check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    /// The inequality holds with equality.
    Marginal,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Per-constraint report produced by [`JmfParams::validate`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidityReport {
    pub checks: Vec<ValidityCheck>,
}

impl ValidityReport {
    /// No constraint is strictly violated (marginal cases are allowed).
    pub fn is_usable(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Every constraint holds strictly.
    pub fn is_strict(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn marginal(&self) -> impl Iterator<Item = &ValidityCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Marginal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidityCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn status_of(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

const MARGIN: f64 = 1e-12;

fn strict_gt(name: &'static str, lhs: f64, rhs: f64, text: &str) -> ValidityCheck {
    let status = if !(lhs.is_finite() && rhs.is_finite()) {
        CheckStatus::Fail
    } else if (lhs - rhs).abs() <= MARGIN * lhs.abs().max(rhs.abs()).max(1.0) {
        CheckStatus::Marginal
    } else if lhs > rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    ValidityCheck { name, status, detail: format!("{text}: {lhs} vs {rhs}") }
}

impl JmfParams {
    /// Builds a parameter set, rejecting violations of the common constraints
    /// `alpha, beta > -1`, `sigma > 0`, `b > 0`.
    pub fn new(kind: JmfKind, alpha: f64, beta: f64, mu: f64, sigma: f64, eta: f64, b: f64) -> Result<Self> {
        let p = Self { kind, alpha, beta, mu, sigma, eta, b };
        p.check_common()?;
        Ok(p)
    }

    pub fn check_common(&self) -> Result<()> {
        let fields = [self.alpha, self.beta, self.mu, self.sigma, self.eta, self.b];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(invalid("parameters must be finite"));
        }
        if !(self.alpha > -1.0 && self.beta > -1.0) {
            return Err(invalid(format!("alpha and beta must exceed -1, got ({}, {})", self.alpha, self.beta)));
        }
        if !(self.sigma > 0.0) {
            return Err(invalid(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.b > 0.0) {
            return Err(invalid(format!("b must be positive, got {}", self.b)));
        }
        if !(self.mu > 0.0) {
            return Err(invalid(format!("mu must be positive, got {}", self.mu)));
        }
        Ok(())
    }

    /// Checks the common constraints and the ones the Sturm-Liouville theory of
    /// the chosen kind relies on.
    pub fn validate(&self) -> ValidityReport {
        let (a, b, mu, eta) = (self.alpha, self.beta, self.mu, self.eta);
        let mut checks = vec![
            strict_gt("alpha>-1", a, -1.0, "alpha > -1"),
            strict_gt("beta>-1", b, -1.0, "beta > -1"),
            strict_gt("sigma>0", self.sigma, 0.0, "sigma > 0"),
            strict_gt("b>0", self.b, 0.0, "b > 0"),
            strict_gt("mu>0", mu, 0.0, "mu > 0"),
        ];
        match self.kind {
            JmfKind::First => {
                checks.push(strict_gt("alpha>mu-1", a, mu - 1.0, "alpha > mu - 1"));
                checks.push(strict_gt("beta>eta+mu", b, eta + mu, "beta > eta + mu"));
            }
            JmfKind::Second => {
                checks.push(strict_gt("alpha>0", a, 0.0, "alpha > 0"));
                checks.push(strict_gt("beta>eta-mu+1", b, eta - mu + 1.0, "beta > eta - mu + 1"));
            }
        }
        ValidityReport { checks }
    }

    pub fn jacobi(&self) -> JacobiParams {
        JacobiParams::new(self.alpha, self.beta)
    }

    pub fn ek_params(&self) -> EkParams {
        EkParams { sigma: self.sigma, eta: self.eta, b: self.b }
    }

    /// `b^sigma`.
    pub fn big_b(&self) -> f64 {
        self.b.powf(self.sigma)
    }

    /// Exponents `(a, r)` of the prefactor `x^a (B - x^sigma)^r`.
    pub fn prefactor_exponents(&self) -> (f64, f64) {
        match self.kind {
            JmfKind::First => (self.sigma * (self.beta - self.eta - self.mu), 0.0),
            JmfKind::Second => (self.sigma * self.eta, self.alpha),
        }
    }

    /// The `n`-th function of the family as a mapped Jacobi form.
    pub fn form(&self, n: usize) -> MappedJacobi {
        let (x_exp, tail_exp) = self.prefactor_exponents();
        MappedJacobi { coeff: 1.0, n, jacobi: self.jacobi(), x_exp, tail_exp, sigma: self.sigma, b: self.b }
    }

    pub fn with_kind(&self, kind: JmfKind) -> Self {
        Self { kind, ..*self }
    }
}

fn check_in_domain(x: f64, b: f64) -> Result<()> {
    if (0.0..=b).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("x = {x} outside [0, {b}]")))
    }
}

/// Value of the `n`-th Jacobi-Müntz function at `x`.
pub fn jmf_eval(n: usize, p: &JmfParams, x: f64) -> Result<f64> {
    check_in_domain(x, p.b)?;
    p.form(n).eval(x)
}

/// Values of the functions `0..=n_max` at `x` by the three-term recurrence in `x^sigma`.
pub fn jmf_recurrence_batch(n_max: usize, p: &JmfParams, x: f64) -> Result<Vec<f64>> {
    check_in_domain(x, p.b)?;
    let (a_exp, r_exp) = p.prefactor_exponents();
    let pre = power_prefactor(x, a_exp, r_exp, p.sigma, p.b)?;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(pre);
    if n_max == 0 {
        return Ok(out);
    }
    let big_b = p.big_b();
    let v = x.powf(p.sigma);
    out.push(pre * ((p.alpha + p.beta + 2.0) * v / big_b - (p.beta + 1.0)));
    for k in 1..n_max {
        let (ak, bk, ck, ek) = recurrence_coeffs(k, p.jacobi());
        let star_b = 2.0 * bk / big_b;
        let star_c = bk + ck;
        let next = ((star_b * v - star_c) * out[k] - ek * out[k - 1]) / ak;
        out.push(next);
    }
    Ok(out)
}

fn mapped_scale(p: &JmfParams) -> f64 {
    ((p.alpha + p.beta + 1.0) * (0.5 * p.big_b()).ln()).exp() / p.sigma
}

/// Squared weighted norm of the `n`-th function (identical for both kinds).
pub fn jmf_norm(n: usize, p: &JmfParams) -> Result<f64> {
    p.check_common()?;
    Ok(mapped_scale(p) * jacobi_norm(n, p.jacobi())?)
}

/// Squared weighted norm of the order `mu + l` EK derivative of the `n`-th function.
pub fn jmf_frac_norm(n: usize, l: usize, p: &JmfParams) -> Result<f64> {
    p.check_common()?;
    let nf = n as f64;
    let shift = p.mu + l as f64;
    let (ratio, inner) = match p.kind {
        JmfKind::First => (
            gamma_ratio(nf + p.beta + 1.0, nf + p.beta - shift + 1.0)?,
            JacobiParams::new(p.alpha + shift, p.beta - shift),
        ),
        JmfKind::Second => (
            gamma_ratio(nf + p.alpha + 1.0, nf + p.alpha - shift + 1.0)?,
            JacobiParams::new(p.alpha - shift, p.beta + shift),
        ),
    };
    inner.check_orthogonal()?;
    Ok(mapped_scale(p) * ratio * ratio * jacobi_norm(n, inner)?)
}

/// Sturm-Liouville eigenvalue of the `n`-th function of the given kind.
pub fn jmf_eigenvalue(kind: JmfKind, n: usize, p: &JmfParams) -> Result<f64> {
    let nf = n as f64;
    let (a, b, mu) = (p.alpha, p.beta, p.mu);
    match kind {
        JmfKind::First => Ok(gamma_ratio(nf + b + 1.0, nf + b - mu + 1.0)? * gamma_ratio(nf + a + mu + 1.0, nf + a + 1.0)?),
        JmfKind::Second => Ok(gamma_ratio(nf + a + 1.0, nf + a - mu + 1.0)? * gamma_ratio(nf + b + mu + 1.0, nf + b + 1.0)?),
    }
}

/// Exponents `((a_w, r_w), (a_p, r_p))` of the weight `w` and coefficient `p`.
pub fn sl_exponents(p: &JmfParams) -> ((f64, f64), (f64, f64)) {
    let (a, b, mu, s, eta) = (p.alpha, p.beta, p.mu, p.sigma, p.eta);
    match p.kind {
        JmfKind::First => ((s * (2.0 * (eta + mu) - b), a), (s * (2.0 * eta + mu - b), mu + a)),
        JmfKind::Second => ((s * (b - 2.0 * eta), -a), (-s * (mu + 2.0 * eta - b), mu - a)),
    }
}

/// Weight `w` and coefficient `p` of the Sturm-Liouville operator at `x`.
pub fn sl_coefficients(p: &JmfParams, x: f64) -> Result<(f64, f64)> {
    check_in_domain(x, p.b)?;
    let ((aw, rw), (ap, rp)) = sl_exponents(p);
    Ok((
        power_prefactor(x, aw, rw, p.sigma, p.b)?,
        power_prefactor(x, ap, rp, p.sigma, p.b)?,
    ))
}

/// First or second ordinary derivative of the `n`-th function, by the product
/// and chain rules on `x^a (B - x^sigma)^r P_n(2 (x/b)^sigma - 1)`.
pub fn jmf_ordinary_deriv(n: usize, p: &JmfParams, x: f64, order: u32) -> Result<f64> {
    if !(x > 0.0 && x < p.b) {
        return Err(Error::Singular(x));
    }
    if !(1..=2).contains(&order) {
        return Err(invalid(format!("derivative order must be 1 or 2, got {order}")));
    }
    let (c, r) = p.prefactor_exponents();
    let s = p.sigma;
    let big_b = p.big_b();
    let pre = power_prefactor(x, c, r, s, p.b)?;
    let q = gap_to_end(x, s, p.b);
    let xs1 = s * ((s - 1.0) * x.ln()).exp();
    // q' = -sigma x^{sigma-1}, q'' = -sigma (sigma-1) x^{sigma-2}
    let dq = -xs1;
    let ddq = -s * (s - 1.0) * ((s - 2.0) * x.ln()).exp();
    let l1 = c / x + r * dq / q;
    let jp = p.jacobi();
    let y = unit_map(x, s, p.b);
    let dy = 2.0 * xs1 / big_b;
    let pv = jacobi_eval(n, jp, y);
    let p1 = jacobi_deriv(n, jp, y, 1)?;
    let d_pre = pre * l1;
    if order == 1 {
        return Ok(d_pre * pv + pre * p1 * dy);
    }
    let dl1 = -c / (x * x) + r * (ddq * q - dq * dq) / (q * q);
    let dd_pre = pre * (l1 * l1 + dl1);
    let ddy = 2.0 * s * (s - 1.0) * ((s - 2.0) * x.ln()).exp() / big_b;
    let p2 = jacobi_deriv(n, jp, y, 2)?;
    Ok(dd_pre * pv + 2.0 * d_pre * p1 * dy + pre * (p2 * dy * dy + p1 * ddy))
}

/// Expansion `sum_k a_k J_k` in one Jacobi-Müntz family.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    pub params: JmfParams,
    pub coeffs: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn new(params: JmfParams, coeffs: Vec<f64>) -> Result<Self> {
        params.check_common()?;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("spectral coefficient".into()));
        }
        Ok(Self { params, coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if self.coeffs.is_empty() {
            return Ok(0.0);
        }
        let vals = jmf_recurrence_batch(self.coeffs.len() - 1, &self.params, x)?;
        Ok(vals.iter().zip(&self.coeffs).map(|(v, c)| v * c).sum())
    }
}
