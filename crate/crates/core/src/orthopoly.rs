//! Scalar special functions and classical Jacobi polynomials on `[-1, 1]`.
//!
//! Everything in the Müntz layer is a Jacobi polynomial composed with the map
//! `x -> 2 (x / b)^sigma - 1`, so this module is the substrate for the rest of
//! the crate: gamma-function ratios, Pochhammer symbols, terminating Gauss
//! hypergeometric sums, the three-term recurrence, norms and Gauss-Jacobi rules.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::linalg::symtridiag_eigen;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which `gamma_fn` is representable in `f64`.
pub const MAX_GAMMA_ARG: f64 = 171.624_376_956_302_7;

const STIRLING_MIN: f64 = 10.0;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power so that t^(z + 1/2) never overflows before e^-t is applied
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * acc
}

/// Series part of Stirling's expansion, `ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2]`.
fn stirling_series(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        + r2 * (-1.0 / 360.0
            + r2 * (1.0 / 1260.0
                + r2 * (-1.0 / 1680.0
                    + r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360_360.0 + r2 / 156.0))))))
}

/// Euler gamma function.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(invalid("gamma of NaN"));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x > MAX_GAMMA_ARG {
        return Err(Error::Overflow(x));
    }
    if x == x.floor() && x <= 30.0 {
        // exact for small positive integers
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    Ok(lanczos_gamma(x))
}

/// Natural logarithm of `|Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(invalid("log-gamma of NaN"));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x >= STIRLING_MIN {
        let lg = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + stirling_series(x);
        return Ok((lg, 1.0));
    }
    if x > 0.0 {
        return Ok((lanczos_gamma(x).ln(), 1.0));
    }
    // reflection: Γ(x) Γ(1 - x) = π / sin(πx)
    let s = (PI * x).sin();
    let (lg, _) = ln_gamma_signed(1.0 - x)?;
    Ok((PI.ln() - s.abs().ln() - lg, s.signum()))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(invalid(format!("ln_gamma requires x > 0, got {x}")));
    }
    ln_gamma_signed(x).map(|(v, _)| v)
}

/// `Γ(a) / Γ(b)` without forming either gamma value.
///
/// A pole in `b` alone gives 0 (the reciprocal gamma function is entire);
/// a pole in `a` is an error.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(invalid("gamma ratio of NaN"));
    }
    if is_pole(a) {
        return Err(Error::Pole(a));
    }
    if is_pole(b) {
        return Ok(0.0);
    }
    if a == b {
        return Ok(1.0);
    }
    let d = a - b;
    if d == d.round() && d.abs() <= 64.0 {
        // Γ(b + k) / Γ(b) = b (b + 1) ... (b + k - 1)
        let k = d.abs() as usize;
        let lo = if d > 0.0 { b } else { a };
        let prod = pochhammer(lo, k);
        return Ok(if d > 0.0 { prod } else { 1.0 / prod });
    }
    if a > 0.0 && b > 0.0 {
        let (mut a1, mut b1) = (a, b);
        let mut factor = 1.0;
        while a1 < STIRLING_MIN {
            factor /= a1;
            a1 += 1.0;
        }
        while b1 < STIRLING_MIN {
            factor *= b1;
            b1 += 1.0;
        }
        let d1 = a1 - b1;
        let log_ratio = d1 * a1.ln() + (b1 - 0.5) * (d1 / b1).ln_1p() - d1 + stirling_series(a1)
            - stirling_series(b1);
        return Ok(factor * log_ratio.exp());
    }
    let (la, sa) = ln_gamma_signed(a)?;
    let (lb, sb) = ln_gamma_signed(b)?;
    Ok(sa * sb * (la - lb).exp())
}

/// Euler beta function `B(a, b)` for `a, b > 0`.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(invalid(format!("beta function requires positive arguments, got ({a}, {b})")));
    }
    let (small, large) = if a <= b { (a, b) } else { (b, a) };
    if small <= MAX_GAMMA_ARG - 1.0 {
        Ok(gamma_fn(small)? * gamma_ratio(large, small + large)?)
    } else {
        Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
    }
}

/// Pochhammer symbol (rising factorial) `(theta)_j`.
pub fn pochhammer(theta: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (theta + i as f64))
}

/// Terminating Gauss hypergeometric sum `2F1(a, b; c; x)` with `a = -n`.
pub fn hyp2f1_terminating(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(a <= 0.0 && a == a.floor()) {
        return Err(invalid(format!(
            "terminating 2F1 requires a non-positive integer a, got {a}"
        )));
    }
    let n = (-a) as usize;
    if let Some(j) = (0..n).find(|&j| c + j as f64 == 0.0) {
        return Err(invalid(format!("2F1 denominator (c)_{} vanishes for c = {c}", j + 1)));
    }
    let mut acc = 1.0;
    for j in (0..n).rev() {
        let jf = j as f64;
        acc = 1.0 + (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * x * acc;
    }
    Ok(acc)
}

/// Exponent pair `(alpha, beta)` of the Jacobi weight `(1 - x)^alpha (1 + x)^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// Orthogonality and quadrature need `alpha, beta > -1`.
    pub fn check_orthogonal(&self) -> Result<()> {
        if self.alpha > -1.0 && self.beta > -1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "Jacobi exponents must exceed -1, got ({}, {})",
                self.alpha, self.beta
            )))
        }
    }

    fn shifted(&self, da: f64, db: f64) -> Self {
        Self::new(self.alpha + da, self.beta + db)
    }
}

/// Coefficients `(A_k, B_k, C_k, E_k)` of
/// `A_k P_{k+1} = (B_k x - C_k) P_k - E_k P_{k-1}`, valid for `k >= 1`.
pub(crate) fn recurrence_coeffs(k: usize, p: JacobiParams) -> (f64, f64, f64, f64) {
    let (a, b) = (p.alpha, p.beta);
    let k = k as f64;
    let s = 2.0 * k + a + b;
    let ak = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
    let bk = s * (s + 1.0) * (s + 2.0);
    let ck = (b * b - a * a) * (s + 1.0);
    let ek = 2.0 * (k + a) * (k + b) * (s + 2.0);
    (ak, bk, ck, ek)
}

/// `P_1^{(alpha, beta)}(x)`.
pub(crate) fn jacobi_p1(p: JacobiParams, x: f64) -> f64 {
    0.5 * (p.alpha + p.beta + 2.0) * x + 0.5 * (p.alpha - p.beta)
}

/// Values `P_0(x), ..., P_n(x)` by forward recurrence.
pub fn jacobi_eval_all(n: usize, p: JacobiParams, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(jacobi_p1(p, x));
    for k in 1..n {
        let (ak, bk, ck, ek) = recurrence_coeffs(k, p);
        let next = ((bk * x - ck) * out[k] - ek * out[k - 1]) / ak;
        out.push(next);
    }
    out
}

/// Jacobi polynomial `P_n^{(alpha, beta)}(x)` by the three-term recurrence.
pub fn jacobi_eval(n: usize, p: JacobiParams, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => jacobi_p1(p, x),
        _ => {
            let (mut prev, mut cur) = (1.0, jacobi_p1(p, x));
            for k in 1..n {
                let (ak, bk, ck, ek) = recurrence_coeffs(k, p);
                let next = ((bk * x - ck) * cur - ek * prev) / ak;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// First or second derivative of `P_n^{(alpha, beta)}` at `x`.
pub fn jacobi_deriv(n: usize, p: JacobiParams, x: f64, order: u32) -> Result<f64> {
    let s = p.alpha + p.beta;
    let nf = n as f64;
    match order {
        1 if n == 0 => Ok(0.0),
        1 => Ok(0.5 * (nf + s + 1.0) * jacobi_eval(n - 1, p.shifted(1.0, 1.0), x)),
        2 if n < 2 => Ok(0.0),
        2 => Ok(0.25
            * (nf + s + 1.0)
            * (nf + s + 2.0)
            * jacobi_eval(n - 2, p.shifted(2.0, 2.0), x)),
        _ => Err(invalid(format!("derivative order must be 1 or 2, got {order}"))),
    }
}

/// Squared weighted norm `gamma_n^{(alpha, beta)}` of `P_n` on `[-1, 1]`.
pub fn jacobi_norm(n: usize, p: JacobiParams) -> Result<f64> {
    p.check_orthogonal()?;
    let (a, b) = (p.alpha, p.beta);
    let scale = 2f64.powf(a + b + 1.0);
    if n == 0 {
        return Ok(scale * beta_fn(a + 1.0, b + 1.0)?);
    }
    let nf = n as f64;
    Ok(scale / (2.0 * nf + a + b + 1.0)
        * gamma_ratio(nf + a + 1.0, nf + 1.0)?
        * gamma_ratio(nf + b + 1.0, nf + a + b + 1.0)?)
}

/// Gauss-Jacobi nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_j w_j f(x_j)`.
    pub fn sum<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Gauss-Jacobi rule with `n + 1` nodes, exact for polynomials of degree `2n + 1`.
///
/// Nodes come from the symmetric Jacobi matrix (Golub-Welsch). Each node is then
/// given a Newton correction on `P_{n+1}` and the weight is recomputed from the
/// closed-form Christoffel number, which keeps small endpoint weights accurate
/// to full relative precision. The eigenvector weights are used whenever that
/// refinement is not clean.
pub fn gauss_jacobi_rule(n: usize, p: JacobiParams) -> Result<JacobiRule> {
    p.check_orthogonal()?;
    let m = n + 1;
    let (a, b) = (p.alpha, p.beta);
    let ab = a + b;
    let diag: Vec<f64> = (0..m)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..m)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            let b2 = if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            b2.sqrt()
        })
        .collect();
    let mu0 = 2f64.powf(ab + 1.0) * beta_fn(a + 1.0, b + 1.0)?;
    let (mut nodes, first) = symtridiag_eigen(&diag, &off)?;
    let gw: Vec<f64> = first.iter().map(|v| mu0 * v * v).collect();

    let mf = m as f64;
    let christoffel = 2f64.powf(ab + 1.0)
        * gamma_ratio(mf + a + 1.0, mf + 1.0)?
        * gamma_ratio(mf + b + 1.0, mf + ab + 1.0)?;
    let mut weights = Vec::with_capacity(m);
    for (j, x) in nodes.iter_mut().enumerate() {
        let mut xr = *x;
        for _ in 0..2 {
            let val = jacobi_eval(m, p, xr);
            let der = jacobi_deriv(m, p, xr, 1)?;
            let dx = val / der;
            if dx.is_finite() && dx.abs() < 1e-8 {
                xr -= dx;
            }
        }
        if xr > -1.0 && xr < 1.0 {
            *x = xr;
        }
        let der = jacobi_deriv(m, p, *x, 1)?;
        let w = christoffel / ((1.0 - *x) * (1.0 + *x) * der * der);
        let agrees = w.is_finite() && w > 0.0 && (w - gw[j]).abs() <= 1e-6 * w.max(gw[j]) + 1e-13 * mu0;
        weights.push(if agrees { w } else { gw[j] });
    }
    for j in 1..m {
        if nodes[j] <= nodes[j - 1] {
            return Err(Error::NoConvergence(j));
        }
    }
    Ok(JacobiRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma_fn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        let g15 = PI.sqrt() / 2.0;
        let expect = 6.5 * 5.5 * 4.5 * 3.5 * 2.5 * 1.5 * g15;
        assert_relative_eq!(gamma_fn(7.5).unwrap(), expect, max_relative = 1e-13);
        assert_relative_eq!(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn gamma_recursion_over_range() {
        let mut x = 0.013;
        while x < 169.0 {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            x += 0.731;
        }
    }

    #[test]
    fn gamma_errors() {
        assert_eq!(gamma_fn(0.0), Err(Error::Pole(0.0)));
        assert_eq!(gamma_fn(-3.0), Err(Error::Pole(-3.0)));
        assert!(matches!(gamma_fn(172.0), Err(Error::Overflow(_))));
        assert!(gamma_fn(171.5).unwrap().is_finite());
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.1, 0.9, 2.5, 9.99, 10.0, 10.01, 57.3, 150.2] {
            assert_relative_eq!(
                ln_gamma(x).unwrap(),
                gamma_fn(x).unwrap().ln(),
                max_relative = 1e-12,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn gamma_ratio_values() {
        assert_eq!(gamma_ratio(5.0, 3.0).unwrap(), 12.0);
        assert_eq!(gamma_ratio(2.7, 2.7).unwrap(), 1.0);
        assert_relative_eq!(gamma_ratio(1001.5, 1000.5).unwrap(), 1000.5, max_relative = 1e-15);
        assert_relative_eq!(
            gamma_ratio(0.3, 7.9).unwrap(),
            gamma_fn(0.3).unwrap() / gamma_fn(7.9).unwrap(),
            max_relative = 1e-13
        );
        // large arguments, no intermediate overflow
        let r = gamma_ratio(10_000.25, 9_999.75).unwrap();
        let x: f64 = 9_999.75;
        assert_relative_eq!(r, x.sqrt() * (1.0 - 1.0 / (8.0 * x)), max_relative = 1e-8);
        assert!(matches!(gamma_ratio(-2.0, 1.5), Err(Error::Pole(_))));
        assert_eq!(gamma_ratio(1.5, -2.0).unwrap(), 0.0);
        assert_relative_eq!(
            gamma_ratio(-0.5, 0.5).unwrap(),
            gamma_fn(-0.5).unwrap() / gamma_fn(0.5).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn gamma_ratio_against_asymptotic_product() {
        // Γ(x + 1/2) / Γ(x) ~ sqrt(x) (1 - 1/(8x) + 1/(128 x^2))
        let x: f64 = 5000.0;
        let asym = x.sqrt() * (1.0 - 1.0 / (8.0 * x) + 1.0 / (128.0 * x * x));
        assert_relative_eq!(gamma_ratio(x + 0.5, x).unwrap(), asym, max_relative = 1e-12);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(2.3, 0), 1.0);
        assert_eq!(pochhammer(3.0, 4), 360.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }

    #[test]
    fn hyp2f1_values() {
        assert_eq!(hyp2f1_terminating(0.0, 2.0, 3.0, 0.4).unwrap(), 1.0);
        assert_relative_eq!(hyp2f1_terminating(-1.0, 2.0, 3.0, 1.0).unwrap(), 1.0 / 3.0);
        assert!(hyp2f1_terminating(-1.5, 2.0, 3.0, 0.1).is_err());
        assert!(hyp2f1_terminating(-3.0, 2.0, -1.0, 0.1).is_err());
    }

    #[test]
    fn jacobi_values() {
        let p = JacobiParams::new(0.5, 1.5);
        assert_eq!(jacobi_eval(0, p, 0.3), 1.0);
        assert_eq!(jacobi_eval(1, p, 0.0), -0.5);
        assert_relative_eq!(jacobi_eval(3, JacobiParams::new(0.0, 0.0), 1.0), 1.0);
        // Legendre P_4
        let x: f64 = 0.37;
        let p4 = (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0;
        assert_relative_eq!(
            jacobi_eval(4, JacobiParams::new(0.0, 0.0), x),
            p4,
            max_relative = 1e-14
        );
        let all = jacobi_eval_all(7, p, -0.4);
        for (k, v) in all.iter().enumerate() {
            assert_relative_eq!(*v, jacobi_eval(k, p, -0.4), max_relative = 1e-14);
        }
    }

    #[test]
    fn jacobi_derivatives() {
        let p = JacobiParams::new(0.3, -0.4);
        assert_eq!(jacobi_deriv(0, p, 0.2, 1).unwrap(), 0.0);
        assert_eq!(jacobi_deriv(0, p, 0.2, 2).unwrap(), 0.0);
        assert_relative_eq!(jacobi_deriv(1, p, 0.2, 1).unwrap(), 0.5 * (0.3 - 0.4 + 2.0));
        assert!(jacobi_deriv(3, p, 0.2, 3).is_err());
        let leg = JacobiParams::new(0.0, 0.0);
        let h = 1e-4;
        let x = 0.3;
        let fd = (jacobi_eval(4, leg, x + h) - 2.0 * jacobi_eval(4, leg, x)
            + jacobi_eval(4, leg, x - h))
            / (h * h);
        assert!((jacobi_deriv(4, leg, x, 2).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn jacobi_norm_values() {
        let leg = JacobiParams::new(0.0, 0.0);
        assert_relative_eq!(jacobi_norm(0, leg).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(jacobi_norm(1, leg).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        assert!(jacobi_norm(2, JacobiParams::new(-1.0, 0.0)).is_err());
        // alpha + beta = -1 exercises the n = 0 special case
        let p = JacobiParams::new(-0.5, -0.5);
        assert_relative_eq!(jacobi_norm(0, p).unwrap(), PI, max_relative = 1e-14);
        // P_n^{(-1/2,-1/2)} = c_n T_n with c_n = Γ(n + 1/2) / (sqrt(π) n!)
        let c3 = gamma_fn(3.5).unwrap() / (PI.sqrt() * 6.0);
        assert_relative_eq!(jacobi_norm(3, p).unwrap(), c3 * c3 * PI / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn gauss_rule_small_cases() {
        let leg = JacobiParams::new(0.0, 0.0);
        let r0 = gauss_jacobi_rule(0, leg).unwrap();
        assert_relative_eq!(r0.nodes[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(r0.weights[0], 2.0, max_relative = 1e-14);
        let r1 = gauss_jacobi_rule(1, leg).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r1.nodes[0], -s, max_relative = 1e-14);
        assert_relative_eq!(r1.nodes[1], s, max_relative = 1e-14);
        assert_relative_eq!(r1.weights[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(r1.weights[1], 1.0, max_relative = 1e-14);

        let p = JacobiParams::new(0.7, -0.35);
        let r = gauss_jacobi_rule(0, p).unwrap();
        let (a, b) = (p.alpha, p.beta);
        assert_relative_eq!(r.nodes[0], (b - a) / (a + b + 2.0), max_relative = 1e-13);
        assert_relative_eq!(
            r.weights[0],
            2f64.powf(a + b + 1.0) * beta_fn(a + 1.0, b + 1.0).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn gauss_rule_rejects_bad_exponents() {
        assert!(gauss_jacobi_rule(4, JacobiParams::new(-1.2, 0.0)).is_err());
    }
}
