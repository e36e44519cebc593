//! Adaptive Dormand-Prince 5(4) integrator for `y' = f(t, y)`.

use crate::error::{invalid, Error, Result};

// Butcher tableau of the 5(4) pair with the fifth-order solution propagated.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// difference between the fifth- and fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Smallest relative tolerance accepted (double-precision floor).
pub const MIN_RTOL: f64 = 1e-13;
/// Smallest absolute tolerance accepted.
pub const MIN_ATOL: f64 = 1e-14;

/// Initial value problem `y' = rhs(t, y)`, `y(t0) = y0`, integrated to `tf`.
///
/// The right-hand side writes the derivative into its third argument.
pub struct IvpProblem<F> {
    pub rhs: F,
    pub t0: f64,
    pub tf: f64,
    pub y0: Vec<f64>,
}

impl<F: Fn(f64, &[f64], &mut [f64])> IvpProblem<F> {
    pub fn new(rhs: F, t0: f64, tf: f64, y0: Vec<f64>) -> Self {
        Self { rhs, t0, tf, y0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DpOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// First trial step; chosen automatically when `None`.
    pub initial_step: Option<f64>,
    /// Upper bound on the step size.
    pub max_step: Option<f64>,
    /// Record every accepted step rather than only the requested times.
    pub keep_all_steps: bool,
    /// Interior times the integrator must land on exactly and record.
    pub checkpoints: Vec<f64>,
}

impl Default for DpOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-12,
            max_steps: 1_000_000,
            initial_step: None,
            max_step: None,
            keep_all_steps: false,
            checkpoints: Vec::new(),
        }
    }
}

impl DpOptions {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IvpStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// Recorded solution: `t0`, any checkpoints (or every step) and `tf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub stats: IvpStats,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory always holds the initial state")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory always holds the initial time")
    }

    /// State recorded at exactly time `t`, if any.
    pub fn state_at(&self, t: f64) -> Option<&[f64]> {
        self.times.iter().position(|&s| s == t).map(|i| self.states[i].as_slice())
    }
}

fn rms_norm(v: &[f64], scale: &[f64]) -> f64 {
    let s: f64 = v.iter().zip(scale).map(|(a, w)| (a / w) * (a / w)).sum();
    (s / v.len().max(1) as f64).sqrt()
}

fn check_finite(v: &[f64], t: f64) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("right-hand side at t = {t}")))
    }
}

/// Integrates with the embedded Dormand-Prince 5(4) pair and PI-free
/// step control (`h_new = h * clamp(0.9 err^{-1/5}, 0.2, 5)`).
pub fn dp54_integrate<F>(prob: &IvpProblem<F>, opts: &DpOptions) -> Result<Trajectory>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (t0, tf) = (prob.t0, prob.tf);
    if !(t0.is_finite() && tf.is_finite() && tf > t0) {
        return Err(invalid(format!("time span must satisfy t0 < tf, got [{t0}, {tf}]")));
    }
    if !(opts.rtol >= MIN_RTOL && opts.atol >= MIN_ATOL) {
        return Err(invalid(format!(
            "tolerances below the double-precision floor (rtol >= {MIN_RTOL}, atol >= {MIN_ATOL})"
        )));
    }
    if prob.y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("initial state".into()));
    }
    let mut checkpoints: Vec<f64> = opts.checkpoints.iter().copied().filter(|&c| c > t0 && c < tf).collect();
    checkpoints.sort_by(f64::total_cmp);
    checkpoints.dedup();
    let mut next_cp = 0usize;

    let dim = prob.y0.len();
    let f = &prob.rhs;
    let mut stats = IvpStats::default();
    let mut y = prob.y0.clone();
    let mut k1 = vec![0.0; dim];
    f(t0, &y, &mut k1);
    stats.rhs_evals += 1;
    check_finite(&k1, t0)?;

    let span = tf - t0;
    let max_step = opts.max_step.unwrap_or(span).min(span);
    let mut h_ctrl = match opts.initial_step {
        Some(h0) if h0 > 0.0 => h0,
        _ => initial_step(f, t0, &y, &k1, opts, &mut stats)?,
    }
    .min(max_step);

    let mut times = vec![t0];
    let mut states = vec![y.clone()];
    let mut t = t0;
    let (mut k2, mut k3, mut k4, mut k5, mut k6, mut k7) =
        (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
    let mut stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    let mut rejected_last = false;

    loop {
        if stats.accepted >= opts.max_steps {
            return Err(Error::StepLimit(opts.max_steps));
        }
        let target = checkpoints.get(next_cp).copied().unwrap_or(tf);
        // `h_ctrl` is the step the controller asks for; `h` is the one taken
        let landing = t + h_ctrl >= target || target - (t + h_ctrl) <= 1e-12 * h_ctrl;
        let h = if landing { target - t } else { h_ctrl };
        if h <= 16.0 * f64::EPSILON * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t, h });
        }

        for i in 0..dim {
            stage[i] = y[i] + h * A21 * k1[i];
        }
        f(t + C2 * h, &stage, &mut k2);
        for i in 0..dim {
            stage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        f(t + C3 * h, &stage, &mut k3);
        for i in 0..dim {
            stage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        f(t + C4 * h, &stage, &mut k4);
        for i in 0..dim {
            stage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        f(t + C5 * h, &stage, &mut k5);
        for i in 0..dim {
            stage[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        f(t + h, &stage, &mut k6);
        for i in 0..dim {
            y_new[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        let t_new = if landing { target } else { t + h };
        f(t_new, &y_new, &mut k7);
        stats.rhs_evals += 6;

        let mut err: f64 = 0.0;
        let mut finite = true;
        for i in 0..dim {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            let r = e.abs() / sc;
            if !r.is_finite() {
                finite = false;
            }
            err = err.max(r);
        }
        if !finite {
            // a blown-up trial step is treated as a rejection unless h is already tiny
            if rejected_last && h <= 1e-10 * span {
                return Err(Error::NonFinite(format!("solution near t = {t}")));
            }
            stats.rejected += 1;
            rejected_last = true;
            h_ctrl = h * MIN_FACTOR;
            continue;
        }

        if err <= 1.0 {
            stats.accepted += 1;
            t = t_new;
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k7);
            let is_checkpoint = landing && next_cp < checkpoints.len();
            if is_checkpoint {
                next_cp += 1;
            }
            if opts.keep_all_steps || is_checkpoint || t == tf {
                times.push(t);
                states.push(y.clone());
            }
            if t == tf {
                break;
            }
            let mut factor = if err == 0.0 { MAX_FACTOR } else { (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR) };
            if rejected_last {
                factor = factor.min(1.0);
            }
            rejected_last = false;
            // a step shortened to land on a target does not shrink the controller's step
            h_ctrl = if landing { h_ctrl.max(h * factor) } else { h * factor }.min(max_step);
        } else {
            stats.rejected += 1;
            rejected_last = true;
            h_ctrl = h * (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
        }
    }
    Ok(Trajectory { times, states, stats })
}

/// Starting step from the magnitudes of `y0`, `f(t0, y0)` and a trial Euler step.
fn initial_step<F>(f: &F, t0: f64, y0: &[f64], f0: &[f64], opts: &DpOptions, stats: &mut IvpStats) -> Result<f64>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let scale: Vec<f64> = y0.iter().map(|v| opts.atol + opts.rtol * v.abs()).collect();
    let d0 = rms_norm(y0, &scale);
    let d1 = rms_norm(f0, &scale);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1: Vec<f64> = y0.iter().zip(f0).map(|(y, d)| y + h0 * d).collect();
    let mut f1 = vec![0.0; y0.len()];
    f(t0 + h0, &y1, &mut f1);
    stats.rhs_evals += 1;
    check_finite(&f1, t0 + h0)?;
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms_norm(&diff, &scale) / h0;
    let dmax = d1.max(d2);
    let h1 = if dmax <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / dmax).powf(0.2) };
    Ok((100.0 * h0).min(h1))
}
