//! Fluid antenna parameterization, spatial correlation law and envelope densities.
//!
//! Port 1 is the reference: every other port's complex gain is a mix of the
//! reference gain and an independent Gaussian term,
//! `h_k = σ(√(1-μ_k²) g_k + μ_k g_0)`. Conditioned on `|h_1|`, the other port
//! envelopes are independent Rician variables, so the joint envelope density
//! is a product of N bivariate factors.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_i0_scaled, bessel_j0};

/// Upper end of the admissible aperture range: the largest correlation
/// argument `2πW` stays below the first zero of J0.
pub const MAX_IN_RANGE_APERTURE: f64 = 0.38;

/// Correlations with |μ| at or above this are treated as identical channels.
pub const SINGULAR_MU: f64 = 1.0 - 1e-9;

/// System parameters of an N-port fluid antenna.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FasConfig {
    /// Number of ports N.
    pub n_ports: usize,
    /// Aperture W, in wavelengths.
    pub aperture: f64,
    /// Channel power σ² = E|h_k|².
    pub sigma2: f64,
    /// Maximum Doppler frequency f_D in Hz.
    pub f_doppler: f64,
}

impl FasConfig {
    pub fn new(n_ports: usize, aperture: f64, sigma2: f64, f_doppler: f64) -> Result<Self> {
        let cfg = FasConfig {
            n_ports,
            aperture,
            sigma2,
            f_doppler,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_ports == 0 {
            return Err(Error::config("n_ports must be at least 1"));
        }
        if !(self.aperture.is_finite() && self.aperture >= 0.0) {
            return Err(Error::config(format!(
                "aperture must be finite and >= 0, got {}",
                self.aperture
            )));
        }
        if !(self.sigma2.is_finite() && self.sigma2 > 0.0) {
            return Err(Error::config(format!("sigma2 must be > 0, got {}", self.sigma2)));
        }
        if !(self.f_doppler.is_finite() && self.f_doppler > 0.0) {
            return Err(Error::config(format!(
                "f_doppler must be > 0, got {}",
                self.f_doppler
            )));
        }
        Ok(())
    }

    /// Whether the aperture lies in `[0, 0.38]`. Larger apertures are usable
    /// but put some port beyond the first zero of the correlation law.
    pub fn in_range(&self) -> bool {
        self.aperture <= MAX_IN_RANGE_APERTURE
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    pub fn with_ports(self, n_ports: usize) -> Self {
        FasConfig { n_ports, ..self }
    }

    pub fn with_aperture(self, aperture: f64) -> Self {
        FasConfig { aperture, ..self }
    }
}

/// Correlation coefficients μ₁..μ_N between each port and port 1 (μ₁ = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationProfile {
    mu: Vec<f64>,
}

impl CorrelationProfile {
    /// Builds a profile from explicit coefficients. `mu[0]` must be zero and
    /// every entry must satisfy |μ| ≤ 1.
    pub fn from_mu(mu: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::config("correlation profile must have at least one port"));
        }
        if mu[0] != 0.0 {
            return Err(Error::config("mu_1 of the reference port must be 0"));
        }
        if let Some((k, m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| !(m.is_finite() && m.abs() <= 1.0))
        {
            return Err(Error::config(format!("mu_{} = {m} is not in [-1, 1]", k + 1)));
        }
        Ok(CorrelationProfile { mu })
    }

    /// Profile with the same coefficient μ on every non-reference port.
    pub fn uniform(n_ports: usize, mu: f64) -> Result<Self> {
        let mut v = vec![mu; n_ports.max(1)];
        v[0] = 0.0;
        Self::from_mu(v)
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn n_ports(&self) -> usize {
        self.mu.len()
    }

    /// First (1-based) port whose correlation is numerically one.
    pub fn first_singular(&self) -> Option<usize> {
        self.mu.iter().position(|m| m.abs() >= SINGULAR_MU).map(|i| i + 1)
    }

    /// True when N ≥ 2 and every non-reference port is numerically identical
    /// to the reference.
    pub fn all_identical(&self) -> bool {
        self.mu.len() >= 2 && self.mu[1..].iter().all(|m| m.abs() >= SINGULAR_MU)
    }

    fn check_regular(&self) -> Result<()> {
        match self.first_singular() {
            Some(port) => Err(Error::Singularity {
                port,
                mu: self.mu[port - 1],
                hint: "the envelope density is degenerate; use the identical-channel form",
            }),
            None => Ok(()),
        }
    }
}

/// Envelope amplitudes `x_1..x_N` at which the joint density is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopePoint {
    values: Vec<f64>,
}

impl EnvelopePoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::config("envelope point must have at least one entry"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::config(format!("envelope amplitude {v} is not >= 0")));
        }
        Ok(EnvelopePoint { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `μ_k = J0(2π (k-1) W / (N-1))` for k = 2..N, with μ₁ = 0.
pub fn correlation_profile(cfg: &FasConfig) -> Result<CorrelationProfile> {
    cfg.validate()?;
    let n = cfg.n_ports;
    let mut mu = vec![0.0; n];
    if n >= 2 {
        let step = 2.0 * PI * cfg.aperture / (n - 1) as f64;
        for (k, m) in mu.iter_mut().enumerate().skip(1) {
            *m = bessel_j0(step * k as f64)?;
        }
    }
    Ok(CorrelationProfile { mu })
}

/// ln of one bivariate factor of the joint density: the density of port
/// amplitude `x` given reference amplitude `x_ref`, correlation `mu`.
fn ln_conditional(sigma2: f64, mu: f64, x_ref: f64, x: f64) -> Result<f64> {
    let m2 = mu * mu;
    let c = sigma2 * (1.0 - m2);
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let v = 2.0 * mu.abs() * x_ref * x / c;
    // e^{-u} I0(v) = i0e(v) e^{v-u}
    let u = (x * x + m2 * x_ref * x_ref) / c;
    Ok((2.0 * x / c).ln() + bessel_i0_scaled(v)?.ln() + (v - u))
}

/// Joint density of the N port envelopes.
pub fn joint_pdf(cfg: &FasConfig, profile: &CorrelationProfile, point: &EnvelopePoint) -> Result<f64> {
    cfg.validate()?;
    let n = cfg.n_ports;
    if profile.n_ports() != n || point.values().len() != n {
        return Err(Error::config(format!(
            "dimension mismatch: n_ports = {n}, profile has {}, point has {}",
            profile.n_ports(),
            point.values().len()
        )));
    }
    profile.check_regular()?;
    let x = point.values();
    let x1 = x[0];
    let mut ln_p = ln_conditional(cfg.sigma2, 0.0, 0.0, x1)?;
    for (&mu, &xk) in profile.mu().iter().zip(x).skip(1) {
        ln_p += ln_conditional(cfg.sigma2, mu, x1, xk)?;
    }
    Ok(ln_p.exp())
}

/// Joint density of two envelopes with correlation `mu`; symmetric in its
/// amplitude arguments.
pub fn bivariate_pdf(sigma2: f64, mu: f64, x1: f64, x2: f64) -> Result<f64> {
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return Err(Error::domain("bivariate_pdf", format!("sigma2 must be > 0, got {sigma2}")));
    }
    if !(x1.is_finite() && x2.is_finite() && x1 >= 0.0 && x2 >= 0.0) {
        return Err(Error::domain("bivariate_pdf", "amplitudes must be finite and >= 0"));
    }
    if !mu.is_finite() || mu.abs() >= SINGULAR_MU {
        return Err(Error::Singularity {
            port: 2,
            mu,
            hint: "the bivariate density needs |mu| < 1",
        });
    }
    if x1 == 0.0 || x2 == 0.0 {
        return Ok(0.0);
    }
    let m2 = mu * mu;
    let c = sigma2 * (1.0 - m2);
    let u = (x1 * x1 + x2 * x2) / c;
    let v = 2.0 * mu.abs() * x1 * x2 / c;
    let pref = 4.0 * x1 * x2 / (sigma2 * sigma2 * (1.0 - m2));
    Ok(pref * bessel_i0_scaled(v)? * (v - u).exp())
}
