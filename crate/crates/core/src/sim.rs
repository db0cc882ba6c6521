//! Monte-Carlo simulation of the fluid antenna envelope and its crossings.
//!
//! Each real Gaussian component of the channel is a sum of sinusoids with
//! Doppler shifts `f_D cos α_n`, which gives the isotropic-scattering
//! (Clarke) spectrum and autocorrelation `½ J0(2π f_D τ)`. Ports are mixed
//! from the components exactly as in the channel model, the strongest port
//! is selected sample by sample, and downward threshold crossings of the
//! selected envelope are counted.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::Threshold;
use crate::channel::{CorrelationProfile, FasConfig};
use crate::error::{Error, Result};

/// Samples between exact re-anchoring of the rotating phasors.
const REANCHOR_BLOCK: usize = 1024;

/// Simulation controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams {
    /// Samples per second.
    pub sample_rate: f64,
    /// Simulated time in seconds.
    pub duration: f64,
    /// Sinusoids per Gaussian component.
    pub n_sinusoids: usize,
    pub seed: u64,
}

impl SimParams {
    pub const DEFAULT_SINUSOIDS: usize = 64;
    pub const DEFAULT_RATE_MULTIPLIER: f64 = 64.0;

    /// Parameters expressed relative to the Doppler frequency: `cycles`
    /// fading cycles (duration·f_D) sampled at `rate_multiplier`·f_D.
    pub fn for_doppler(f_doppler: f64, cycles: f64, rate_multiplier: f64, seed: u64) -> Self {
        SimParams {
            sample_rate: rate_multiplier * f_doppler,
            duration: cycles / f_doppler,
            n_sinusoids: Self::DEFAULT_SINUSOIDS,
            seed,
        }
    }

    pub fn validate(&self, cfg: &FasConfig) -> Result<()> {
        cfg.validate()?;
        if !(self.sample_rate.is_finite() && self.sample_rate >= 16.0 * cfg.f_doppler) {
            return Err(Error::config(format!(
                "sample_rate {} must be at least 16 f_D = {}",
                self.sample_rate,
                16.0 * cfg.f_doppler
            )));
        }
        if !(self.duration.is_finite() && self.duration * cfg.f_doppler >= 100.0) {
            return Err(Error::config(format!(
                "duration must cover at least 100 fading cycles, got duration*f_D = {}",
                self.duration * cfg.f_doppler
            )));
        }
        if self.n_sinusoids < 8 {
            return Err(Error::config(format!(
                "n_sinusoids must be >= 8, got {}",
                self.n_sinusoids
            )));
        }
        Ok(())
    }

    pub fn n_samples(&self) -> usize {
        (self.duration * self.sample_rate).round() as usize
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.sample_rate
    }
}

/// Uniformly sampled, nonnegative envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSeries {
    samples: Vec<f64>,
    dt: f64,
}

impl EnvelopeSeries {
    pub fn new(samples: Vec<f64>, dt: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::config("envelope series needs at least 2 samples"));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::config(format!("dt must be > 0, got {dt}")));
        }
        if let Some(v) = samples.iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(Error::config(format!("envelope sample {v} is negative or NaN")));
        }
        Ok(EnvelopeSeries { samples, dt })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Total observed time, `len · dt`.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 * self.dt
    }

    pub fn mean_square(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>() / self.samples.len() as f64
    }
}

/// A crossing-rate measurement at one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcrEstimate {
    pub threshold: f64,
    /// Crossings per second.
    pub rate: f64,
    /// `rate / f_D`.
    pub nlcr: f64,
    pub crossings: u64,
    pub duration: f64,
}

impl LcrEstimate {
    pub fn from_counts(threshold: f64, crossings: u64, duration: f64, f_doppler: f64) -> Self {
        let rate = crossings as f64 / duration;
        LcrEstimate {
            threshold,
            rate,
            nlcr: rate / f_doppler,
            crossings,
            duration,
        }
    }

    /// Pools two independent runs at the same threshold.
    pub fn merge(&self, other: &LcrEstimate, f_doppler: f64) -> Result<Self> {
        if self.threshold != other.threshold {
            return Err(Error::config("cannot merge estimates at different thresholds"));
        }
        Ok(Self::from_counts(
            self.threshold,
            self.crossings + other.crossings,
            self.duration + other.duration,
            f_doppler,
        ))
    }
}

/// The independent real Gaussian components `x_0, y_0, ..., x_N, y_N`.
///
/// Series `2j` is `x_j` and `2j + 1` is `y_j`. The reference port uses
/// `x_0, y_0`; port k ≥ 2 mixes in `x_k, y_k`; `x_1, y_1` exist for
/// indexing symmetry and are not used by the port mixer.
#[derive(Debug, Clone)]
pub struct BaseProcesses {
    series: Vec<Vec<f64>>,
    dt: f64,
}

impl BaseProcesses {
    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn x(&self, j: usize) -> &[f64] {
        &self.series[2 * j]
    }

    pub fn y(&self, j: usize) -> &[f64] {
        &self.series[2 * j + 1]
    }

    pub fn series(&self) -> &[Vec<f64>] {
        &self.series
    }
}

fn stream_rng(seed: u64, trial: u32, process: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((trial as u64) << 32) | process as u64);
    rng
}

/// One zero-mean, variance-½ Gaussian process with the Clarke spectrum.
///
/// Arrival angles sit on a uniform grid over a quarter circle with a random
/// common offset, `α_n = (2πn - π + θ) / (4M)`, and each sinusoid gets an
/// independent uniform phase. The grid makes the slope variance match the
/// continuous spectrum for any draw of θ.
fn clarke_process(rng: &mut ChaCha8Rng, f_doppler: f64, m: usize, n: usize, dt: f64) -> Vec<f64> {
    let theta = PI * (2.0 * rng.gen::<f64>() - 1.0);
    let tones: Vec<(f64, f64)> = (1..=m)
        .map(|i| {
            let alpha = (2.0 * PI * i as f64 - PI + theta) / (4.0 * m as f64);
            let omega = 2.0 * PI * f_doppler * alpha.cos();
            let phase = 2.0 * PI * rng.gen::<f64>();
            (omega, phase)
        })
        .collect();

    let amp = (1.0 / m as f64).sqrt();
    let mut out = vec![0.0; n];
    for (omega, phase) in tones {
        let (step_im, step_re) = (omega * dt).sin_cos();
        for (block, chunk) in out.chunks_mut(REANCHOR_BLOCK).enumerate() {
            let t0 = (block * REANCHOR_BLOCK) as f64 * dt;
            let (mut im, mut re) = (omega * t0 + phase).sin_cos();
            for v in chunk.iter_mut() {
                *v += amp * re;
                let next_re = re * step_re - im * step_im;
                im = re * step_im + im * step_re;
                re = next_re;
            }
        }
    }
    out
}

/// Synthesizes the 2(N+1) independent components for one run.
pub fn generate_base_processes(cfg: &FasConfig, sim: &SimParams) -> Result<BaseProcesses> {
    generate_trial(cfg, sim, 0)
}

fn generate_trial(cfg: &FasConfig, sim: &SimParams, trial: u32) -> Result<BaseProcesses> {
    sim.validate(cfg)?;
    let n = sim.n_samples();
    let dt = sim.dt();
    let count = 2 * (cfg.n_ports + 1);
    let series = (0..count)
        .into_par_iter()
        .map(|j| {
            let mut rng = stream_rng(sim.seed, trial, j as u32);
            clarke_process(&mut rng, cfg.f_doppler, sim.n_sinusoids, n, dt)
        })
        .collect();
    Ok(BaseProcesses { series, dt })
}

/// Per-port envelopes `|h_k(t)|` with
/// `h_k = σ(√(1-μ_k²) x_k + μ_k x_0) + jσ(√(1-μ_k²) y_k + μ_k y_0)`.
pub fn assemble_port_envelopes(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    base: &BaseProcesses,
) -> Result<Vec<EnvelopeSeries>> {
    let n = cfg.n_ports;
    if profile.n_ports() != n {
        return Err(Error::config(format!(
            "profile has {} ports but config has {n}",
            profile.n_ports()
        )));
    }
    if base.len() != 2 * (n + 1) {
        return Err(Error::config(format!(
            "expected {} base processes for {n} ports, got {}",
            2 * (n + 1),
            base.len()
        )));
    }
    let sigma = cfg.sigma();
    let (x0, y0) = (base.x(0), base.y(0));
    (0..n)
        .into_par_iter()
        .map(|port| {
            let samples: Vec<f64> = if port == 0 {
                x0.iter()
                    .zip(y0)
                    .map(|(&re, &im)| envelope(sigma, re, im))
                    .collect()
            } else {
                let mu = profile.mu()[port];
                let own = (1.0 - mu * mu).max(0.0).sqrt();
                let (xk, yk) = (base.x(port + 1), base.y(port + 1));
                x0.iter()
                    .zip(y0)
                    .zip(xk.iter().zip(yk))
                    .map(|((&a, &b), (&c, &d))| envelope(sigma, own * c + mu * a, own * d + mu * b))
                    .collect()
            };
            EnvelopeSeries::new(samples, base.dt())
        })
        .collect()
}

#[inline]
fn envelope(sigma: f64, re: f64, im: f64) -> f64 {
    sigma * (re * re + im * im).sqrt()
}

/// Pointwise maximum over ports (the fluid antenna always sits on the
/// strongest port). Ties go to the lowest port index.
pub fn fas_select(ports: &[EnvelopeSeries]) -> Result<EnvelopeSeries> {
    let first = ports
        .first()
        .ok_or_else(|| Error::config("port selection needs at least one port"))?;
    if ports
        .iter()
        .any(|p| p.len() != first.len() || p.dt() != first.dt())
    {
        return Err(Error::config("port series differ in length or sample interval"));
    }
    let mut best = first.samples().to_vec();
    for p in &ports[1..] {
        for (b, &v) in best.iter_mut().zip(p.samples()) {
            if v > *b {
                *b = v;
            }
        }
    }
    EnvelopeSeries::new(best, first.dt())
}

/// Downward and upward crossing counts. A sample exactly at the level
/// counts as above it.
pub fn crossing_counts(series: &EnvelopeSeries, x_th: f64) -> (u64, u64) {
    let mut down = 0;
    let mut up = 0;
    for w in series.samples().windows(2) {
        let above0 = w[0] >= x_th;
        let above1 = w[1] >= x_th;
        if above0 && !above1 {
            down += 1;
        } else if !above0 && above1 {
            up += 1;
        }
    }
    (down, up)
}

/// Downward crossing rate of `series` at `x_th`.
pub fn count_crossings(series: &EnvelopeSeries, x_th: Threshold, f_doppler: f64) -> Result<LcrEstimate> {
    if series.len() < 2 {
        return Err(Error::config("crossing count needs at least 2 samples"));
    }
    if !(f_doppler.is_finite() && f_doppler > 0.0) {
        return Err(Error::config(format!("f_doppler must be > 0, got {f_doppler}")));
    }
    let (down, _) = crossing_counts(series, x_th.linear());
    Ok(LcrEstimate::from_counts(
        x_th.linear(),
        down,
        series.duration(),
        f_doppler,
    ))
}

/// Runs one trial end to end and returns the selected envelope.
pub fn simulate_selected(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    sim: &SimParams,
    trial: u32,
) -> Result<EnvelopeSeries> {
    let base = generate_trial(cfg, sim, trial)?;
    let ports = assemble_port_envelopes(cfg, profile, &base)?;
    fas_select(&ports)
}

/// Generate, mix, select and count: one estimate per threshold. Identical
/// inputs give bit-identical output regardless of the thread pool size.
pub fn estimate_lcr(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    sim: &SimParams,
    thresholds: &[Threshold],
) -> Result<Vec<LcrEstimate>> {
    let selected = simulate_selected(cfg, profile, sim, 0)?;
    thresholds
        .iter()
        .map(|&t| count_crossings(&selected, t, cfg.f_doppler))
        .collect()
}

/// Pools `trials` independent runs (distinct random streams) by summing
/// crossing counts and durations.
pub fn estimate_lcr_trials(
    cfg: &FasConfig,
    profile: &CorrelationProfile,
    sim: &SimParams,
    thresholds: &[Threshold],
    trials: u32,
) -> Result<Vec<LcrEstimate>> {
    if trials == 0 {
        return Err(Error::config("trials must be at least 1"));
    }
    let per_trial: Vec<Vec<LcrEstimate>> = (0..trials)
        .map(|trial| {
            let selected = simulate_selected(cfg, profile, sim, trial)?;
            thresholds
                .iter()
                .map(|&t| count_crossings(&selected, t, cfg.f_doppler))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut pooled = per_trial[0].clone();
    for run in &per_trial[1..] {
        for (acc, est) in pooled.iter_mut().zip(run) {
            *acc = acc.merge(est, cfg.f_doppler)?;
        }
    }
    Ok(pooled)
}

/// Mean positive envelope slope, `Σ max(Δr/dt, 0) / (len - 1)`.
///
/// For a Rayleigh envelope under isotropic scattering the slope is Gaussian
/// with standard deviation `π σ f_D`, so this converges to `√(π/2) σ f_D`.
pub fn slope_moment_check(series: &EnvelopeSeries) -> Result<f64> {
    if series.len() < 3 {
        return Err(Error::config("slope estimate needs at least 3 samples"));
    }
    let dt = series.dt();
    let total: f64 = series
        .samples()
        .windows(2)
        .map(|w| ((w[1] - w[0]) / dt).max(0.0))
        .sum();
    Ok(total / (series.len() - 1) as f64)
}
