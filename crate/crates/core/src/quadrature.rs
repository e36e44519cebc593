//! Gauss-Jacobi rules mapped to `(0, b)` through `x = b ((1 + t) / 2)^{1/sigma}`.
//!
//! The base rule integrates against `x^{sigma(beta+1)-1} (b^sigma - x^sigma)^alpha`.
//! The two reweighted rules integrate products of Jacobi-Müntz functions against
//! their orthogonality measures `x^{sigma-1} w_1` and `x^{sigma-1} w_2`.

use crate::error::{Error, Result};
use crate::jmf::{JmfKind, JmfParams};
use crate::orthopoly::{gauss_jacobi_rule, JacobiParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Base,
    Gjmqr1,
    Gjmqr2,
}

/// Nodes in `(0, b)` with matching weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
    pub jacobi: JacobiParams,
    pub sigma: f64,
    pub b: f64,
    /// Set for the reweighted rules.
    pub params: Option<JmfParams>,
    /// Natural logs of the base weights, kept so reweighting never underflows.
    log_base: Vec<f64>,
    /// `b^sigma - x_j^sigma`, computed without cancellation.
    gaps: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_j w_j f(x_j)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        integrate(self, f)
    }

    /// `b^sigma - x_j^sigma` at every node.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }
}

/// Base Gauss-Jacobi-Müntz rule with `n + 1` nodes.
pub fn gjm_base_rule(n: usize, alpha: f64, beta: f64, sigma: f64, b: f64) -> Result<QuadRule> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(crate::error::invalid(format!("sigma must be positive, got {sigma}")));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(crate::error::invalid(format!("b must be positive, got {b}")));
    }
    let jp = JacobiParams::new(alpha, beta);
    let rule = gauss_jacobi_rule(n, jp)?;
    let big_b = b.powf(sigma);
    let ln_scale = (alpha + beta + 1.0) * (0.5 * big_b).ln() - sigma.ln();
    let mut nodes = Vec::with_capacity(rule.len());
    let mut gaps = Vec::with_capacity(rule.len());
    let mut log_base = Vec::with_capacity(rule.len());
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        nodes.push(b * (0.5 * (1.0 + t)).powf(1.0 / sigma));
        gaps.push(0.5 * big_b * (1.0 - t));
        log_base.push(ln_scale + w.ln());
    }
    let weights = log_base.iter().map(|l| l.exp()).collect();
    Ok(QuadRule { nodes, weights, kind: RuleKind::Base, jacobi: jp, sigma, b, params: None, log_base, gaps })
}

/// Reweighted rule for the orthogonality measure of the given kind.
pub fn gjmqr_rule(kind: JmfKind, n: usize, p: &JmfParams) -> Result<QuadRule> {
    p.check_common()?;
    let mut rule = gjm_base_rule(n, p.alpha, p.beta, p.sigma, p.b)?;
    let s = p.sigma;
    let mut weights = Vec::with_capacity(rule.len());
    for ((&x, &lb), &gap) in rule.nodes.iter().zip(&rule.log_base).zip(&rule.gaps) {
        let log_mult = match kind {
            JmfKind::First => 2.0 * s * (p.eta + p.mu - p.beta) * x.ln(),
            JmfKind::Second => -2.0 * p.alpha * gap.ln() - 2.0 * s * p.eta * x.ln(),
        };
        let w = (lb + log_mult).exp();
        if !w.is_finite() || w == 0.0 {
            return Err(Error::NonFinite(format!("quadrature weight at node {x} out of range")));
        }
        weights.push(w);
    }
    rule.weights = weights;
    rule.kind = match kind {
        JmfKind::First => RuleKind::Gjmqr1,
        JmfKind::Second => RuleKind::Gjmqr2,
    };
    rule.params = Some(p.with_kind(kind));
    Ok(rule)
}

/// `sum_j w_j f(x_j)`, rejecting non-finite samples.
pub fn integrate<F: Fn(f64) -> f64>(rule: &QuadRule, f: F) -> Result<f64> {
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("integrand at x = {x}")));
        }
        acc += w * v;
    }
    Ok(acc)
}
