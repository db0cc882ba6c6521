use std::f64::consts::{FRAC_PI_4, PI};

use super::check_finite;
use crate::error::Result;

const J0_SERIES_LIMIT: f64 = 12.0;
const I0_SERIES_LIMIT: f64 = 25.0;

/// Bessel function of the first kind, order zero.
///
/// Power series up to |x| = 12, Hankel asymptotic expansion beyond.
pub fn bessel_j0(x: f64) -> Result<f64> {
    check_finite("bessel_j0", "x", x)?;
    let x = x.abs();
    if x <= J0_SERIES_LIMIT {
        Ok(j0_series(x))
    } else {
        Ok(j0_asymptotic(x))
    }
}

fn j0_series(x: f64) -> f64 {
    // sum_k (-x^2/4)^k / (k!)^2
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term.abs() <= f64::EPSILON * 1e-2 * sum.abs().max(1e-300) && kf * kf > q.abs() {
            break;
        }
    }
    sum
}

fn j0_asymptotic(x: f64) -> f64 {
    // J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - pi/4.
    // c_k = prod_{j<=k} -(2j-1)^2 / (8 j x); P takes even k, Q odd k,
    // each with alternating sign.
    let mut p = 1.0;
    let mut q = 0.0;
    let mut c: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        c *= -(odd * odd) / (8.0 * kf * x);
        if c.abs() >= prev {
            break;
        }
        prev = c.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * c;
        } else {
            q += sign * c;
        }
        if c.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Exponentially scaled modified Bessel function `e^{-|x|} I0(x)`.
///
/// Stays in (0, 1] for every finite argument, so products such as
/// `e^{-u} I0(v)` can be formed as `bessel_i0_scaled(v) * e^{v - u}` without
/// overflow.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    check_finite("bessel_i0_scaled", "x", x)?;
    let x = x.abs();
    if x <= I0_SERIES_LIMIT {
        Ok(i0_series(x) * (-x).exp())
    } else {
        Ok(i0e_asymptotic(x))
    }
}

/// Unscaled I0. Overflows to infinity past x ≈ 713.
pub fn bessel_i0(x: f64) -> Result<f64> {
    let scaled = bessel_i0_scaled(x)?;
    Ok(scaled * x.abs().exp())
}

fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term <= f64::EPSILON * 1e-2 * sum {
            break;
        }
    }
    sum
}

fn i0e_asymptotic(x: f64) -> f64 {
    // e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k prod_{j<=k} (2j-1)^2 / (8 j x)
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..100 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * odd * odd / (8.0 * kf * x);
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < f64::EPSILON * 1e-2 * sum {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}
