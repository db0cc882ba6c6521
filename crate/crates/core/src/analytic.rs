//! Exact level crossing rate of the selected (strongest-port) envelope.
//!
//! The crossing rate of `max_k |h_k(t)|` at level `x_th` splits into one
//! contribution per port: the rate at which port i sits exactly at the
//! threshold while every other port is below it, times the mean positive
//! envelope slope `√(π/2)·σ·f_D`, which is the same for every port under
//! isotropic scattering. With port 1 as reference the other ports are
//! conditionally Rician, so the "below threshold" probabilities become
//! `1 - Q1` factors and only a single integral over the reference amplitude
//! remains.

use std::f64::consts::PI;

use crate::channel::{CorrelationProfile, FasConfig};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
pub use crate::quadrature::QuadratureSpec;
use crate::specfun::{bessel_i0_scaled, gamma_p_int, ln_factorial, marcum_p1, Tolerance};

/// Series control for the Marcum-Q products and the two-port series.
///
/// The number of significant terms grows like the square root of the
/// Poisson mixing mean, which for strongly correlated ports reaches the
/// tens of thousands; hence the large cap.
pub const ANALYTIC_SERIES_TOLERANCE: Tolerance = Tolerance {
    rel_eps: 1e-12,
    max_terms: 100_000,
};

/// A crossing level, as a linear amplitude in the units of σ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Threshold(f64);

impl Threshold {
    pub fn new(x_th: f64) -> Result<Self> {
        if x_th.is_finite() && x_th > 0.0 {
            Ok(Threshold(x_th))
        } else {
            Err(Error::domain("threshold", format!("must be finite and > 0, got {x_th}")))
        }
    }

    /// Threshold given in dB relative to the RMS amplitude σ.
    pub fn from_db(db: f64, sigma2: f64) -> Result<Self> {
        Self::new(sigma2.sqrt() * 10f64.powf(db / 20.0))
    }

    pub fn linear(self) -> f64 {
        self.0
    }

    pub fn db(self, sigma2: f64) -> f64 {
        20.0 * (self.0 / sigma2.sqrt()).log10()
    }
}

fn check_profile(cfg: &FasConfig, profile: &CorrelationProfile) -> Result<()> {
    cfg.validate()?;
    if profile.n_ports() != cfg.n_ports {
        return Err(Error::config(format!(
            "profile has {} ports but config has {}",
            profile.n_ports(),
            cfg.n_ports
        )));
    }
    match profile.first_singular() {
        Some(port) => Err(Error::Singularity {
            port,
            mu: profile.mu()[port - 1],
            hint: if profile.all_identical() {
                "all ports identical: use lcr_identical (or lcr_exact)"
            } else {
                "mixed singular profile is not covered by the exact form"
            },
        }),
        None => Ok(()),
    }
}

/// Probability that every port in `{2..N} \ {skip_index}` stays below `x_th`
/// given the reference amplitude `x1`:
/// `Π_k [1 - Q1(√(2μ_k²/(σ²(1-μ_k²)))·x1, √(2/(σ²(1-μ_k²)))·x_th)]`.
///
/// `skip_index` is 1-based; passing 1 keeps every non-reference port.
pub fn surviving_product(
    sigma2: f64,
    profile: &CorrelationProfile,
    x1: f64,
    x_th: f64,
    skip_index: usize,
) -> Result<f64> {
    surviving_product_with(sigma2, profile, x1, x_th, skip_index, ANALYTIC_SERIES_TOLERANCE)
}

pub fn surviving_product_with(
    sigma2: f64,
    profile: &CorrelationProfile,
    x1: f64,
    x_th: f64,
    skip_index: usize,
    tol: Tolerance,
) -> Result<f64> {
    let n = profile.n_ports();
    if skip_index == 0 || skip_index > n {
        return Err(Error::config(format!(
            "skip_index {skip_index} outside 1..={n}"
        )));
    }
    if !(x1 >= 0.0 && x1 <= x_th && x_th.is_finite()) {
        return Err(Error::domain(
            "surviving_product",
            format!("need 0 <= x1 <= x_th, got x1 = {x1}, x_th = {x_th}"),
        ));
    }
    let mut prod = 1.0;
    for (idx, &mu) in profile.mu().iter().enumerate().skip(1) {
        if idx + 1 == skip_index {
            continue;
        }
        let m2 = mu * mu;
        let c = sigma2 * (1.0 - m2);
        let a = (2.0 * m2 / c).sqrt() * x1;
        let b = (2.0 / c).sqrt() * x_th;
        prod *= marcum_p1(a, b, tol)?;
        if prod == 0.0 {
            break;
        }
    }
    Ok(prod)
}

/// Exact N-port crossing rate (crossings per second) for a profile with
/// every |μ_k| < 1.
pub fn lcr_theorem1(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    x_th: Threshold,
    quad: &QuadratureSpec,
) -> Result<f64> {
    lcr_theorem1_with(cfg, profile, x_th, quad, ANALYTIC_SERIES_TOLERANCE)
}

pub fn lcr_theorem1_with(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    x_th: Threshold,
    quad: &QuadratureSpec,
    series: Tolerance,
) -> Result<f64> {
    check_profile(cfg, profile)?;
    quad.validate()?;
    series.validate()?;
    let sigma2 = cfg.sigma2;
    let x = x_th.linear();
    let prefactor = (2.0 * PI).sqrt() * x * cfg.f_doppler / cfg.sigma();

    // reference port at the threshold, all others below
    let first = (-x * x / sigma2).exp() * surviving_product_with(sigma2, profile, x, x, 1, series)?;

    // port i at the threshold, reference and the rest below
    let mut second = 0.0;
    for (idx, &mu) in profile.mu().iter().enumerate().skip(1) {
        let port = idx + 1;
        let m2 = mu * mu;
        let c = sigma2 * (1.0 - m2);
        let integrand = |x1: f64| -> Result<f64> {
            let u = (x * x + x1 * x1) / c;
            let v = 2.0 * mu.abs() * x * x1 / c;
            let envelope = 2.0 * x1 / sigma2 * bessel_i0_scaled(v)? * (v - u).exp();
            if envelope == 0.0 {
                return Ok(0.0);
            }
            Ok(envelope * surviving_product_with(sigma2, profile, x1, x, port, series)?)
        };
        second += integrate(integrand, 0.0, x, quad)? / (1.0 - m2);
    }
    Ok(prefactor * (first + second))
}

/// Crossing rate with independent ports (all μ_k = 0); identical to
/// selection combining over N i.i.d. Rayleigh branches.
pub fn lcr_iid(cfg: &FasConfig, x_th: Threshold) -> Result<f64> {
    cfg.validate()?;
    let r2 = x_th.linear() * x_th.linear() / cfg.sigma2;
    let below = -(-r2).exp_m1();
    let n = cfg.n_ports as f64;
    Ok(n * (2.0 * PI).sqrt() * cfg.f_doppler * r2.sqrt() * (-r2).exp() * below.powf(n - 1.0))
}

/// Crossing rate when every port carries the same channel (all μ_k = 1):
/// the single-port Rayleigh rate, independent of N.
pub fn lcr_identical(cfg: &FasConfig, x_th: Threshold) -> Result<f64> {
    cfg.validate()?;
    let r = x_th.linear() / cfg.sigma();
    Ok((2.0 * PI).sqrt() * cfg.f_doppler * r * (-r * r).exp())
}

/// Two-port crossing rate from the incomplete-gamma series, `0 ≤ |mu| < 1`.
///
/// Term k of the series,
/// `(μx)^{2k} / ((k!)² (σ²(1-μ²))^{k-1}) · γ(k+1, z)` with `z = x²/(σ²(1-μ²))`,
/// times the outer prefactor equals
/// `2√(2π) f_D (x/σ) e^{-x²/σ²} · Poisson(μ²z; k) · P(k+1, z)`, which is the
/// form summed here. It never overflows, even as μ → 1 where the raw terms
/// exceed the double range.
pub fn lcr_two_port_series(cfg: &FasConfig, mu: f64, x_th: Threshold, tol: Tolerance) -> Result<f64> {
    cfg.validate()?;
    tol.validate()?;
    if !mu.is_finite() || mu.abs() >= crate::channel::SINGULAR_MU {
        return Err(Error::Singularity {
            port: 2,
            mu,
            hint: "two-port series needs |mu| < 1; use lcr_identical",
        });
    }
    let sigma2 = cfg.sigma2;
    let x = x_th.linear();
    let m2 = mu * mu;
    let z = x * x / (sigma2 * (1.0 - m2));
    let s = m2 * z;
    let r2 = x * x / sigma2;
    let prefactor = 2.0 * (2.0 * PI).sqrt() * cfg.f_doppler * r2.sqrt() * (-r2).exp();

    let sum = if s == 0.0 {
        gamma_p_int(1, z)?
    } else {
        poisson_gamma_series(s, z, tol)?
    };
    Ok(prefactor * sum)
}

/// `Σ_k Poisson(s; k) P(k+1, z)`, summed downward from an upper tail cut of
/// the Poisson weights so that the decreasing gamma factor is built by
/// accumulation rather than cancellation.
fn poisson_gamma_series(s: f64, z: f64, tol: Tolerance) -> Result<f64> {
    let l = -(tol.rel_eps * 1e-3).ln();
    let reach = l / 3.0 + (l * l / 9.0 + 2.0 * l * s).sqrt();
    let mut k = (s + reach).ceil() as u64;

    let ln_s = s.ln();
    let ln_z = z.ln();
    let mut ln_w = -s + k as f64 * ln_s - ln_factorial(k);
    let mut ln_pz = -z + k as f64 * ln_z - ln_factorial(k);
    let mut gamma = gamma_p_int(k + 1, z)?;

    let mut sum = 0.0;
    let mut prev = 0.0;
    let mut terms = 0usize;
    loop {
        let term = ln_w.exp() * gamma;
        sum += term;
        terms += 1;
        if k == 0 || (term < prev && term <= tol.rel_eps * sum) {
            return Ok(sum);
        }
        if terms >= tol.max_terms {
            return Err(Error::Accuracy {
                what: "two-port series",
                partial: sum,
                work: terms,
            });
        }
        prev = term;
        gamma = (gamma + ln_pz.exp()).min(1.0);
        let ln_k = (k as f64).ln();
        ln_w += ln_k - ln_s;
        ln_pz += ln_k - ln_z;
        k -= 1;
    }
}

/// Exact crossing rate for any profile: routes the all-identical profile to
/// [`lcr_identical`] and everything else to [`lcr_theorem1`].
pub fn lcr_exact(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    x_th: Threshold,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if profile.all_identical() {
        lcr_identical(cfg, x_th)
    } else {
        lcr_theorem1(cfg, profile, x_th, quad)
    }
}
