//! Independent reference values used by the integration tests.
#![allow(dead_code)]

/// `ln Gamma(x)` for `x > 0` by upward shifting and the Stirling series.
/// Written independently of the library's Lanczos implementation.
pub fn ln_gamma_ref(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut shift = 0.0;
    let mut z = x;
    while z < 20.0 {
        shift += z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z2 * z2 * z)
        - 1.0 / (1680.0 * z2 * z2 * z2 * z)
        + 1.0 / (1188.0 * z2 * z2 * z2 * z2 * z);
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

pub fn gamma_ref(x: f64) -> f64 {
    ln_gamma_ref(x).exp()
}

/// `Gamma(a) / Gamma(b)` for positive arguments.
pub fn gamma_ratio_ref(a: f64, b: f64) -> f64 {
    (ln_gamma_ref(a) - ln_gamma_ref(b)).exp()
}

pub fn beta_ref(a: f64, b: f64) -> f64 {
    (ln_gamma_ref(a) + ln_gamma_ref(b) - ln_gamma_ref(a + b)).exp()
}

/// Jacobi polynomial by its explicit finite sum
/// `P_n(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`.
pub fn jacobi_sum(n: usize, a: f64, b: f64, x: f64) -> f64 {
    let binom = |top: f64, k: usize| -> f64 {
        let mut r = 1.0;
        for i in 0..k {
            r *= (top - i as f64) / (i as f64 + 1.0);
        }
        r
    };
    (0..=n)
        .map(|s| {
            binom(n as f64 + a, n - s) * binom(n as f64 + b, s) * (0.5 * (x - 1.0)).powi(s as i32)
                * (0.5 * (x + 1.0)).powi((n - s) as i32)
        })
        .sum()
}

/// Squared norm of `P_n^{(a,b)}` on `[-1, 1]`.
pub fn jacobi_norm_ref(n: usize, a: f64, b: f64) -> f64 {
    let nf = n as f64;
    let ln = (a + b + 1.0) * 2f64.ln() - (2.0 * nf + a + b + 1.0).ln() + ln_gamma_ref(nf + a + 1.0)
        + ln_gamma_ref(nf + b + 1.0)
        - ln_gamma_ref(nf + 1.0)
        - ln_gamma_ref(nf + a + b + 1.0);
    ln.exp()
}

/// Composite Gauss-Legendre integral of `f` over `[lo, hi]`, 20 points per panel.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    const X: [f64; 10] = [
        0.076_526_521_133_497_33, 0.227_785_851_141_645_08, 0.373_706_088_715_419_56,
        0.510_867_001_950_827_1, 0.636_053_680_726_515, 0.746_331_906_460_150_8,
        0.839_116_971_822_218_8, 0.912_234_428_251_326, 0.963_971_927_277_913_8,
        0.993_128_599_185_094_9,
    ];
    const W: [f64; 10] = [
        0.152_753_387_130_725_85, 0.149_172_986_472_603_75, 0.142_096_109_318_382_05,
        0.131_688_638_449_176_63, 0.118_194_531_961_518_42, 0.101_930_119_817_240_44,
        0.083_276_741_576_704_75, 0.062_672_048_334_109_06, 0.040_601_429_800_386_94,
        0.017_614_007_139_152_12,
    ];
    let h = (hi - lo) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let c = lo + (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(&W) {
            acc += w * (f(c + 0.5 * h * x) + f(c - 0.5 * h * x));
        }
    }
    0.5 * h * acc
}
