//! Parameter sweeps over thresholds, port counts and apertures.
//!
//! A [`SweepSpec`] names the grids and the evaluation methods; [`run_sweep`]
//! evaluates the Cartesian product in parallel and returns rows in a fixed
//! order (port count, aperture, threshold, method), so the emitted CSV is
//! byte-identical across runs and thread counts.

mod compare;
mod config;
mod csv_io;

pub use compare::{compare_methods, ComparePoint, CompareSummary, GateStatistic};
pub use config::{parse_int_grid, parse_real_grid, GridValue, MethodList, RunConfig, DEFAULT_MIN_NLCR};
pub use csv_io::{emit_csv, read_csv, read_csv_from, write_csv, CSV_HEADER};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    lcr_exact, lcr_identical, lcr_iid, lcr_two_port_series, QuadratureSpec, Threshold,
    ANALYTIC_SERIES_TOLERANCE,
};
use crate::channel::{correlation_profile, FasConfig};
use crate::error::{Error, Result};
use crate::sim::{estimate_lcr_trials, SimParams};

/// How a crossing rate is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exact N-port expression (routes all-identical profiles to the N-independent form).
    Theorem1,
    /// Independent ports / i.i.d. selection combining.
    Iid,
    /// All ports identical.
    Identical,
    /// Two-port incomplete-gamma series.
    TwoPortSeries,
    /// Simulation.
    MonteCarlo,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Theorem1,
        Method::Iid,
        Method::Identical,
        Method::TwoPortSeries,
        Method::MonteCarlo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::Iid => "iid",
            Method::Identical => "identical",
            Method::TwoPortSeries => "two_port_series",
            Method::MonteCarlo => "monte_carlo",
        }
    }

    pub fn is_analytic(self) -> bool {
        self != Method::MonteCarlo
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown method {s:?}; expected one of theorem1, iid, identical, two_port_series, monte_carlo"
                ))
            })
    }
}

/// Threshold grid, as linear amplitudes or in dB relative to σ.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdGrid {
    Linear(Vec<f64>),
    Db(Vec<f64>),
}

impl ThresholdGrid {
    pub fn len(&self) -> usize {
        match self {
            ThresholdGrid::Linear(v) | ThresholdGrid::Db(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn resolve(&self, sigma2: f64) -> Result<Vec<Threshold>> {
        match self {
            ThresholdGrid::Linear(v) => v.iter().map(|&x| Threshold::new(x)).collect::<Result<Vec<_>>>(),
            ThresholdGrid::Db(v) => v.iter().map(|&d| Threshold::from_db(d, sigma2)).collect::<Result<Vec<_>>>(),
        }
        .map_err(|e| Error::config(format!("thresholds: {e}")))
    }
}

/// Simulation settings relative to the Doppler frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloSpec {
    /// duration · f_D
    pub duration_cycles: f64,
    /// sample_rate / f_D
    pub sample_rate_mult: f64,
    pub n_sinusoids: usize,
    pub seed: u64,
    pub trials: u32,
}

impl Default for MonteCarloSpec {
    fn default() -> Self {
        MonteCarloSpec {
            duration_cycles: 1e4,
            sample_rate_mult: SimParams::DEFAULT_RATE_MULTIPLIER,
            n_sinusoids: SimParams::DEFAULT_SINUSOIDS,
            seed: 1,
            trials: 1,
        }
    }
}

impl MonteCarloSpec {
    pub fn params(&self, f_doppler: f64) -> SimParams {
        SimParams {
            n_sinusoids: self.n_sinusoids,
            ..SimParams::for_doppler(
                f_doppler,
                self.duration_cycles,
                self.sample_rate_mult,
                self.seed,
            )
        }
    }
}

/// The grids and methods of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub thresholds: ThresholdGrid,
    pub n_list: Vec<usize>,
    pub w_list: Vec<f64>,
    pub methods: Vec<Method>,
    pub sim: Option<MonteCarloSpec>,
    pub quadrature: QuadratureSpec,
}

impl SweepSpec {
    pub fn new(
        thresholds: ThresholdGrid,
        n_list: Vec<usize>,
        w_list: Vec<f64>,
        methods: Vec<Method>,
    ) -> Self {
        SweepSpec {
            thresholds,
            n_list,
            w_list,
            methods,
            sim: None,
            quadrature: QuadratureSpec::default(),
        }
    }

    pub fn with_sim(mut self, sim: MonteCarloSpec) -> Self {
        self.sim = Some(sim);
        self
    }

    pub fn validate(&self, template: &FasConfig) -> Result<()> {
        template.validate()?;
        if self.thresholds.is_empty() {
            return Err(Error::config("thresholds: grid is empty"));
        }
        self.thresholds.resolve(template.sigma2)?;
        if self.n_list.is_empty() {
            return Err(Error::config("n: port-count list is empty"));
        }
        if self.n_list.contains(&0) {
            return Err(Error::config("n: port counts must be >= 1"));
        }
        if self.w_list.is_empty() {
            return Err(Error::config("w: aperture list is empty"));
        }
        if let Some(w) = self.w_list.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::config(format!("w: aperture {w} must be finite and >= 0")));
        }
        if self.methods.is_empty() {
            return Err(Error::config("method: no methods selected"));
        }
        if self.methods.contains(&Method::TwoPortSeries) && self.n_list.iter().any(|&n| n != 2) {
            return Err(Error::config(
                "method: two_port_series requires every entry of n to be 2",
            ));
        }
        if self.methods.contains(&Method::MonteCarlo) {
            let mc = self
                .sim
                .ok_or_else(|| Error::config("method: monte_carlo requires simulation settings"))?;
            if mc.trials == 0 {
                return Err(Error::config("trials: must be >= 1"));
            }
            mc.params(template.f_doppler)
                .validate(template)
                .map_err(|e| Error::config(format!("simulation: {e}")))?;
        }
        self.quadrature.validate()?;
        Ok(())
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: usize,
    pub w: f64,
    pub threshold_linear: f64,
    pub threshold_db: f64,
    pub method: Method,
    /// rate / f_D
    pub nlcr: f64,
    /// crossings per second
    pub raw_rate: f64,
    pub mc_crossings: Option<u64>,
    pub mc_duration: Option<f64>,
}

fn analytic_rate(
    method: Method,
    cfg: &FasConfig,
    profile: &crate::channel::CorrelationProfile,
    x: Threshold,
    quad: &QuadratureSpec,
) -> Result<f64> {
    match method {
        Method::Theorem1 => lcr_exact(cfg, profile, x, quad),
        Method::Iid => lcr_iid(cfg, x),
        Method::Identical => lcr_identical(cfg, x),
        Method::TwoPortSeries => {
            lcr_two_port_series(cfg, profile.mu()[1], x, ANALYTIC_SERIES_TOLERANCE)
        }
        Method::MonteCarlo => unreachable!("simulation rows are produced separately"),
    }
}

fn run_point(spec: &SweepSpec, cfg: &FasConfig, thresholds: &[Threshold]) -> Result<Vec<ResultRow>> {
    let profile = correlation_profile(cfg)?;
    let mc = match (spec.methods.contains(&Method::MonteCarlo), spec.sim) {
        (true, Some(mc)) => Some(estimate_lcr_trials(
            cfg,
            &profile,
            &mc.params(cfg.f_doppler),
            thresholds,
            mc.trials,
        )?),
        _ => None,
    };

    let per_threshold: Vec<Vec<ResultRow>> = thresholds
        .par_iter()
        .enumerate()
        .map(|(ti, &x)| {
            spec.methods
                .iter()
                .map(|&method| {
                    let base = ResultRow {
                        n: cfg.n_ports,
                        w: cfg.aperture,
                        threshold_linear: x.linear(),
                        threshold_db: x.db(cfg.sigma2),
                        method,
                        nlcr: 0.0,
                        raw_rate: 0.0,
                        mc_crossings: None,
                        mc_duration: None,
                    };
                    if method.is_analytic() {
                        let rate = analytic_rate(method, cfg, &profile, x, &spec.quadrature)?;
                        Ok(ResultRow {
                            nlcr: rate / cfg.f_doppler,
                            raw_rate: rate,
                            ..base
                        })
                    } else {
                        let est = mc.as_ref().expect("simulation ran")[ti];
                        Ok(ResultRow {
                            nlcr: est.nlcr,
                            raw_rate: est.rate,
                            mc_crossings: Some(est.crossings),
                            mc_duration: Some(est.duration),
                            ..base
                        })
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_threshold.into_iter().flatten().collect())
}

/// Evaluates every (n, w, threshold, method) combination.
///
/// `template` supplies σ² and f_D; its port count and aperture are replaced
/// by the grid values.
pub fn run_sweep(spec: &SweepSpec, template: &FasConfig) -> Result<Vec<ResultRow>> {
    spec.validate(template)?;
    let thresholds = spec.thresholds.resolve(template.sigma2)?;
    let points: Vec<FasConfig> = spec
        .n_list
        .iter()
        .flat_map(|&n| {
            spec.w_list
                .iter()
                .map(move |&w| template.with_ports(n).with_aperture(w))
        })
        .collect();
    let blocks: Vec<Vec<ResultRow>> = points
        .par_iter()
        .map(|cfg| run_point(spec, cfg, &thresholds))
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}
