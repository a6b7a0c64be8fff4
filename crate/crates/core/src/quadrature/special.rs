//! Error function, Dawson's integral and the exponential integral E₁.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_560_772_59;

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function, accurate in the far tail where
/// `1 - erf(x)` cancels.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Exponential integral E₁(x) = ∫ₓ^∞ e^{−t}/t dt for x > 0.
///
/// Power series below x = 1, modified Lentz continued fraction above.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("E1 needs x > 0 (got {x})")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 1.0 {
        // E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k·k!)
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= -x / kf;
            let contrib = term / kf;
            sum += contrib;
            if contrib.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        return Ok(-EULER_GAMMA - x.ln() - sum);
    }
    if x > 745.0 {
        return Ok(0.0);
    }
    // e^{-x} / (x + 1 - 1²/(x + 3 - 2²/(x + 5 - ...)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    Ok(h * (-x).exp())
}

// Rybicki's sampling-theorem representation:
// D(x) ≈ (1/√π) Σ_{n odd} e^{-(x - n h)²} / n. The aliasing error is of
// order exp(-(π / 2h)²), far below f64 resolution at h = 0.2.
const RYBICKI_H: f64 = 0.2;
const RYBICKI_TERMS: usize = 20;

/// Dawson's integral D(x) = e^{−x²} ∫₀ˣ e^{t²} dt.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.2 {
        // Σ (-1)^n 2^n x^{2n+1} / (2n+1)!!
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for n in 1..30 {
            term *= -2.0 * x2 / (2 * n + 1) as f64;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        return sum;
    }
    if ax > 50.0 {
        // 1/(2x) · Σ (2n-1)!! / (2x²)^n
        let inv = 1.0 / (2.0 * x * x);
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 1..12 {
            term *= (2 * n - 1) as f64 * inv;
            sum += term;
        }
        return sum / (2.0 * x);
    }
    let h = RYBICKI_H;
    let n0 = 2.0 * (0.5 * ax / h).round();
    let xp = ax - n0 * h;
    let mut e1 = (2.0 * xp * h).exp();
    let e2 = e1 * e1;
    let mut d1 = n0 + 1.0;
    let mut d2 = d1 - 2.0;
    let mut sum = 0.0;
    for i in 0..RYBICKI_TERMS {
        let c = (-((2 * i + 1) as f64 * h).powi(2)).exp();
        sum += c * (e1 / d1 + 1.0 / (d2 * e1));
        d1 += 2.0;
        d2 -= 2.0;
        e1 *= e2;
    }
    FRAC_1_SQRT_PI * (-xp * xp).exp() * sum * x.signum()
}
