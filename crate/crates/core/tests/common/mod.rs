//! Brute-force reference implementations. Each one uses a different
//! representation from the library code it checks: integral forms evaluated
//! by trapezoid or Simpson rules instead of series and asymptotics.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson rule with `n` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Trapezoid rule over [0, π]; spectrally accurate for the smooth, even,
/// periodic integrands of the Bessel integral representations.
fn trapezoid_0_pi<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    let h = PI / n as f64;
    let mut s = 0.5 * (f(0.0) + f(PI));
    for i in 1..n {
        s += f(i as f64 * h);
    }
    s * h
}

/// J0(x) = (1/π) ∫₀^π cos(x sin θ) dθ
pub fn j0(x: f64) -> f64 {
    let n = 200 + 4 * x.abs().ceil() as usize;
    trapezoid_0_pi(|t| (x * t.sin()).cos(), n) / PI
}

/// e^{-x} I0(x) = (1/π) ∫₀^π e^{x(cos θ - 1)} dθ
pub fn i0e(x: f64) -> f64 {
    let x = x.abs();
    // the integrand's peak at θ = 0 has width ~1/√x
    let n = 40 + 30 * x.sqrt().ceil() as usize;
    trapezoid_0_pi(|t| (x * (t.cos() - 1.0)).exp(), n) / PI
}

pub fn i0(x: f64) -> f64 {
    i0e(x) * x.abs().exp()
}

/// Rician kernel t·exp(-(t² + a²)/2)·I0(a t), written to avoid overflow.
fn rice_kernel(a: f64, t: f64) -> f64 {
    t * (-(t - a) * (t - a) / 2.0).exp() * i0e(a * t)
}

/// 1 - Q1(a, b) = ∫₀^b Rician kernel.
pub fn marcum_p1(a: f64, b: f64) -> f64 {
    simpson(|t| rice_kernel(a, t), 0.0, b, 10_000)
}

/// Q1(a, b) = ∫_b^∞ Rician kernel, truncated 14 units past the peak and
/// the lower limit, where the tail is below e^{-98} of the leading part.
pub fn marcum_q1(a: f64, b: f64) -> f64 {
    let top = b.max(a) + 14.0;
    simpson(|t| rice_kernel(a, t), b, top, 20_000)
}

/// γ(k+1, x) = ∫₀^x t^k e^{-t} dt
pub fn lower_gamma(k: u32, x: f64) -> f64 {
    simpson(|t| if t == 0.0 && k == 0 { 1.0 } else { t.powi(k as i32) * (-t).exp() }, 0.0, x, 4000)
}

pub fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Regularized P(n, x) for integer n ≥ 1.
pub fn gamma_p(n: u32, x: f64) -> f64 {
    lower_gamma(n - 1, x) / factorial(n - 1)
}

/// Density of a Rayleigh envelope with E[r²] = σ².
pub fn rayleigh_pdf(sigma2: f64, r: f64) -> f64 {
    2.0 * r / sigma2 * (-r * r / sigma2).exp()
}

/// Density of port k's envelope given the reference envelope r1.
pub fn conditional_pdf(sigma2: f64, mu: f64, r1: f64, r: f64) -> f64 {
    let s = sigma2 * (1.0 - mu * mu);
    let arg = 2.0 * mu.abs() * r1 * r / s;
    2.0 * r / s * (-(r * r + mu * mu * r1 * r1) / s + arg).exp() * i0e(arg)
}

/// Joint density of two envelopes with complex correlation μ.
pub fn bivariate_pdf(sigma2: f64, mu: f64, r1: f64, r2: f64) -> f64 {
    rayleigh_pdf(sigma2, r1) * conditional_pdf(sigma2, mu, r1, r2)
}

/// Crossing rate of the strongest of N ports from Rice's formula,
/// `E[ṙ⁺] Σ_k f_{r_k}(x) P(all others < x | r_k = x)`, with every
/// conditional probability found by Simpson integration of the densities.
pub fn selection_lcr(sigma2: f64, f_d: f64, mu: &[f64], x: f64) -> f64 {
    let slope = (sigma2 * PI / 2.0).sqrt() * f_d;
    let below = |m: f64, r1: f64| simpson(|r| conditional_pdf(sigma2, m, r1, r), 0.0, x, 160);
    // port 1 at the level, the others conditionally independent given it
    let mut total = rayleigh_pdf(sigma2, x) * mu[1..].iter().map(|&m| below(m, x)).product::<f64>();
    for k in 1..mu.len() {
        total += simpson(
            |r1| {
                let others: f64 = mu[1..]
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j + 1 != k)
                    .map(|(_, &m)| below(m, r1))
                    .product();
                rayleigh_pdf(sigma2, r1) * conditional_pdf(sigma2, mu[k], r1, x) * others
            },
            0.0,
            x,
            160,
        );
    }
    slope * total
}

/// Independent-port crossing rate computed by differentiating the
/// distribution of the maximum: N f(x) F(x)^{N-1} E[ṙ⁺].
pub fn iid_lcr(sigma2: f64, f_d: f64, n: u32, x: f64) -> f64 {
    let cdf = simpson(|r| rayleigh_pdf(sigma2, r), 0.0, x, 2000);
    let slope = (sigma2 * PI / 2.0).sqrt() * f_d;
    n as f64 * rayleigh_pdf(sigma2, x) * cdf.powi(n as i32 - 1) * slope
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// `count` evenly spaced points on [lo, hi], both ends included.
pub fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}
