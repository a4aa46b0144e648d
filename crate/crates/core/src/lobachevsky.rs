//! The Lobachevsky function `Л(θ) = -∫₀^θ log|2 sin t| dt`.
//!
//! [`lobachevsky`] evaluates `Л(θ) = Cl₂(2θ)/2` through the power series of
//! the Clausen function around zero, which converges geometrically on the
//! reduced range `2θ ∈ [0, π]`. [`lobachevsky_quadrature`] integrates the
//! definition directly and serves as an independent check.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Smallest absolute tolerance accepted by [`lobachevsky_quadrature`].
pub const MIN_QUADRATURE_TOL: f64 = 1e-14;

const SERIES_TERMS: usize = 40;

/// `Л(θ)` for any finite `θ`, absolute error below `1e-14`.
///
/// Odd and π-periodic; non-finite input gives NaN.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let u = theta.rem_euclid(PI);
    if u > FRAC_PI_2 {
        -0.5 * clausen_reduced(2.0 * (PI - u))
    } else {
        0.5 * clausen_reduced(2.0 * u)
    }
}

/// `Cl₂(x)` for `x ∈ [0, π]`:
/// `x - x ln x + Σ_k ζ(2k) / (k(2k+1)) · x^(2k+1) / (2π)^(2k)`.
fn clausen_reduced(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let y = (x / (2.0 * PI)).powi(2);
    let coeffs = series_coefficients();
    // Horner from the tail; y <= 1/4 so the terms fall geometrically
    let sum = coeffs.iter().rev().fold(0.0, |acc, c| (acc + c) * y);
    x - x * x.ln() + x * sum
}

/// `ζ(2k) / (k (2k+1))` for `k = 1..=SERIES_TERMS`.
fn series_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        std::array::from_fn(|i| {
            let k = (i + 1) as f64;
            zeta(2.0 * k) / (k * (2.0 * k + 1.0))
        })
    })
}

/// Riemann zeta for real `s >= 2` by Euler–Maclaurin summation.
pub(crate) fn zeta(s: f64) -> f64 {
    const N: f64 = 20.0;
    // B_2, B_4, ..., B_10 divided by the factorials (2j)!
    const B_OVER_FACT: [f64; 5] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1_209_600.0,
        1.0 / 47_900_160.0,
    ];
    let head: f64 = (1..N as usize).map(|n| (n as f64).powf(-s)).sum();
    let mut tail = N.powf(1.0 - s) / (s - 1.0) + 0.5 * N.powf(-s);
    // rising factorial (s)_(2j-1) times N^(-s-2j+1)
    let mut rising = s;
    let mut power = N.powf(-s - 1.0);
    for (j, b) in B_OVER_FACT.iter().enumerate() {
        tail += b * rising * power;
        let m = (2 * j + 1) as f64;
        rising *= (s + m) * (s + m + 1.0);
        power /= N * N;
    }
    head + tail
}

/// `Л(θ)` by adaptive Gauss–Kronrod integration of the definition.
///
/// The logarithmic singularities at multiples of π are removed analytically:
/// `log|2 sin t| = log t + log(π - t) + h(t)` on `[0, π]` with `h` smooth,
/// and the integral of `h` is computed adaptively to `abs_tol`.
pub fn lobachevsky_quadrature(theta: f64, abs_tol: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    if !(abs_tol >= MIN_QUADRATURE_TOL) {
        return Err(Error::ToleranceUnreachable(abs_tol));
    }
    // the integrand is even and π-periodic
    let a = theta.abs();
    let periods = (a / PI).floor();
    let rest = a - periods * PI;
    let share = abs_tol / (periods + 2.0);
    let mut integral = integral_log_2sin(rest, share)?;
    if periods > 0.0 {
        integral += periods * integral_log_2sin(PI, share)?;
    }
    Ok(-theta.signum() * integral)
}

/// `∫₀^u log|2 sin t| dt` for `u ∈ [0, π]`.
fn integral_log_2sin(u: f64, abs_tol: f64) -> Result<f64> {
    if u == 0.0 {
        return Ok(0.0);
    }
    let xlogx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    let log_t = xlogx(u) - u;
    let w = PI - u;
    let log_pi_minus_t = -xlogx(w) + w + xlogx(PI) - PI;
    let smooth = adaptive_gk15(&smooth_part, 0.0, u, abs_tol, 0)?;
    Ok(log_t + log_pi_minus_t + smooth)
}

/// `h(t) = log(2 sin t / (t (π - t)))`, symmetric about π/2.
fn smooth_part(t: f64) -> f64 {
    let s = t.min(PI - t).max(0.0);
    if s == 0.0 {
        return (2.0 / PI).ln();
    }
    (2.0 * (s.sin() / s) / (PI - s)).ln()
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Weights of the embedded 7-point Gauss rule at nodes 1, 3, 5, 7.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 40;

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let center = f(mid);
    let mut kronrod = KRONROD_WEIGHTS[7] * center;
    let mut gauss = GAUSS_WEIGHTS[3] * center;
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adaptive_gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64> {
    let (value, err) = gk15(f, a, b);
    if err <= tol {
        return Ok(value);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::ToleranceUnreachable(tol));
    }
    let mid = 0.5 * (a + b);
    Ok(adaptive_gk15(f, a, mid, 0.5 * tol, depth + 1)? + adaptive_gk15(f, mid, b, 0.5 * tol, depth + 1)?)
}
