//! Weighted orthogonal projection onto the span of the first `N + 1`
//! Jacobi-Müntz functions, plus error and coefficient-decay diagnostics.

use crate::error::{invalid, Error, Result};
use crate::jmf::{jmf_norm, jmf_recurrence_batch, JmfParams, SpectralCoeffs};
use crate::quadrature::{gjmqr_rule, QuadRule};

/// Default quadrature size for a projection of degree `n`.
pub fn default_quad_size(n: usize) -> usize {
    2 * n + 2
}

/// Smallest probe grid accepted by [`error_norms`].
pub const MIN_PROBE: usize = 64;

/// Coefficients `a_k = (u, J_k)_w / gamma_k` for `k = 0..=n`, using a
/// reweighted rule of the family's kind with `quad_size` nodes.
pub fn project<F: Fn(f64) -> f64>(u: F, n: usize, p: &JmfParams, quad_size: usize) -> Result<SpectralCoeffs> {
    if quad_size < n + 1 {
        return Err(invalid(format!("quadrature size {quad_size} is below n + 1 = {}", n + 1)));
    }
    let rule = gjmqr_rule(p.kind, quad_size - 1, p)?;
    project_with_rule(u, n, p, &rule)
}

/// Same as [`project`] with a caller-supplied reweighted rule.
pub fn project_with_rule<F: Fn(f64) -> f64>(u: F, n: usize, p: &JmfParams, rule: &QuadRule) -> Result<SpectralCoeffs> {
    let mut acc = vec![0.0; n + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let ux = u(x);
        if !ux.is_finite() {
            return Err(Error::NonFinite(format!("projected function at x = {x}")));
        }
        let vals = jmf_recurrence_batch(n, p, x)?;
        for (a, v) in acc.iter_mut().zip(&vals) {
            *a += w * ux * v;
        }
    }
    for (k, a) in acc.iter_mut().enumerate() {
        *a /= jmf_norm(k, p)?;
    }
    SpectralCoeffs::new(*p, acc)
}

/// `sum_k a_k J_k(x)`.
pub fn project_eval(c: &SpectralCoeffs, x: f64) -> Result<f64> {
    c.eval(x)
}

/// Weighted L2 error and max error on a uniform interior probe grid.
///
/// The L2 part uses a reweighted rule with `max(probe_size, 2N)` nodes; the
/// max part samples `x_i = (i + 1/2) b / probe_size`.
pub fn error_norms<F: Fn(f64) -> f64>(u: F, c: &SpectralCoeffs, probe_size: usize) -> Result<(f64, f64)> {
    if probe_size < MIN_PROBE {
        return Err(invalid(format!("probe size must be at least {MIN_PROBE}")));
    }
    let p = &c.params;
    let q = probe_size.max(2 * c.len());
    let rule = gjmqr_rule(p.kind, q - 1, p)?;
    let mut l2 = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let e = u(x) - c.eval(x)?;
        l2 += w * e * e;
    }
    let h = p.b / probe_size as f64;
    let mut linf: f64 = 0.0;
    for i in 0..probe_size {
        let x = (i as f64 + 0.5) * h;
        linf = linf.max((u(x) - c.eval(x)?).abs());
    }
    if !(l2.is_finite() && linf.is_finite()) {
        return Err(Error::NonFinite("projection error".into()));
    }
    Ok((l2.max(0.0).sqrt(), linf))
}

/// Weighted L2 norm of `u` with a reweighted rule of `quad_size` nodes.
pub fn weighted_norm<F: Fn(f64) -> f64>(u: F, p: &JmfParams, quad_size: usize) -> Result<f64> {
    let rule = gjmqr_rule(p.kind, quad_size.max(1) - 1, p)?;
    Ok(rule.integrate(|x| u(x) * u(x))?.sqrt())
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Slope of `ln |a_k|` against `ln k` over the upper half `k in [ceil(N/2), N]`,
/// skipping zero coefficients.
pub fn decay_slope(coeffs: &[f64]) -> Option<f64> {
    let n = coeffs.len().checked_sub(1)?;
    let start = n.div_ceil(2).max(1);
    let (xs, ys): (Vec<f64>, Vec<f64>) = (start..=n)
        .filter(|&k| coeffs[k] != 0.0)
        .map(|k| ((k as f64).ln(), coeffs[k].abs().ln()))
        .unzip();
    fit_slope(&xs, &ys)
}

/// Slope of `ln |a_k|` against `k` over `k in [lo, hi]`, skipping zeros.
pub fn geometric_decay_slope(coeffs: &[f64], lo: usize, hi: usize) -> Option<f64> {
    let hi = hi.min(coeffs.len().checked_sub(1)?);
    let (xs, ys): (Vec<f64>, Vec<f64>) = (lo..=hi)
        .filter(|&k| coeffs[k] != 0.0)
        .map(|k| (k as f64, coeffs[k].abs().ln()))
        .unzip();
    fit_slope(&xs, &ys)
}

/// Summary of one projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionReport {
    pub n: usize,
    pub coeffs: SpectralCoeffs,
    pub l2_error: f64,
    pub linf_error: f64,
    /// `None` when fewer than two non-zero coefficients are available.
    pub decay_slope: Option<f64>,
}

/// Projects `u` and measures the error.
pub fn projection_report<F: Fn(f64) -> f64>(
    u: F,
    n: usize,
    p: &JmfParams,
    quad_size: usize,
    probe_size: usize,
) -> Result<ProjectionReport> {
    let coeffs = project(&u, n, p, quad_size)?;
    let (l2_error, linf_error) = error_norms(&u, &coeffs, probe_size)?;
    let decay_slope = decay_slope(&coeffs.coeffs);
    Ok(ProjectionReport { n, coeffs, l2_error, linf_error, decay_slope })
}
