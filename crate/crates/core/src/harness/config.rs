use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{MonteCarloSpec, Method, SweepSpec, ThresholdGrid};
use crate::channel::FasConfig;
use crate::error::{Error, Result};

/// A grid written either as a TOML scalar, a TOML array or a grid string
/// (see [`parse_real_grid`] and [`parse_int_grid`]).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GridValue<T> {
    One(T),
    Many(Vec<T>),
    Text(String),
}

impl GridValue<f64> {
    fn resolve(&self, field: &str) -> Result<Vec<f64>> {
        match self {
            GridValue::One(v) => Ok(vec![*v]),
            GridValue::Many(v) => Ok(v.clone()),
            GridValue::Text(s) => parse_real_grid(s).map_err(|e| prefix(field, e)),
        }
    }
}

impl GridValue<usize> {
    fn resolve(&self, field: &str) -> Result<Vec<usize>> {
        match self {
            GridValue::One(v) => Ok(vec![*v]),
            GridValue::Many(v) => Ok(v.clone()),
            GridValue::Text(s) => parse_int_grid(s).map_err(|e| prefix(field, e)),
        }
    }
}

fn prefix(field: &str, e: Error) -> Error {
    match e {
        Error::Config(msg) => Error::config(format!("{field}: {msg}")),
        other => other,
    }
}

/// Method list: a TOML array of names or one comma-separated string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MethodList {
    Many(Vec<String>),
    Text(String),
}

impl MethodList {
    fn resolve(&self) -> Result<Vec<Method>> {
        let names: Vec<&str> = match self {
            MethodList::Many(v) => v.iter().map(String::as_str).collect(),
            MethodList::Text(s) => s.split(',').collect(),
        };
        names
            .into_iter()
            .map(|n| n.parse().map_err(|e| prefix("method", e)))
            .collect()
    }
}

/// Run settings from a TOML file, a set of command line flags, or both.
///
/// Every field is optional. [`RunConfig::merge`] lets flags override the
/// file; [`RunConfig::template`] and [`RunConfig::sweep_spec`] fill in the
/// defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: Option<GridValue<usize>>,
    pub w: Option<GridValue<f64>>,
    pub sigma2: Option<f64>,
    pub fd: Option<f64>,
    pub thresholds: Option<GridValue<f64>>,
    pub thresholds_db: Option<GridValue<f64>>,
    pub methods: Option<MethodList>,
    pub seed: Option<u64>,
    pub duration_cycles: Option<f64>,
    pub sample_rate_mult: Option<f64>,
    pub n_sinusoids: Option<usize>,
    pub trials: Option<u32>,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
    /// Reference NLCR floor for comparison statistics.
    pub min_nlcr: Option<f64>,
}

pub const DEFAULT_MIN_NLCR: f64 = 0.05;

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: RunConfig) -> RunConfig {
        // the two threshold forms are alternatives, so a flag of either kind
        // replaces both
        let (thresholds, thresholds_db) = if over.thresholds.is_some() || over.thresholds_db.is_some() {
            (over.thresholds, over.thresholds_db)
        } else {
            (self.thresholds, self.thresholds_db)
        };
        RunConfig {
            n: over.n.or(self.n),
            w: over.w.or(self.w),
            sigma2: over.sigma2.or(self.sigma2),
            fd: over.fd.or(self.fd),
            thresholds,
            thresholds_db,
            methods: over.methods.or(self.methods),
            seed: over.seed.or(self.seed),
            duration_cycles: over.duration_cycles.or(self.duration_cycles),
            sample_rate_mult: over.sample_rate_mult.or(self.sample_rate_mult),
            n_sinusoids: over.n_sinusoids.or(self.n_sinusoids),
            trials: over.trials.or(self.trials),
            out: over.out.or(self.out),
            tolerance: over.tolerance.or(self.tolerance),
            min_nlcr: over.min_nlcr.or(self.min_nlcr),
        }
    }

    pub fn n_list(&self) -> Result<Vec<usize>> {
        self.n.as_ref().map_or(Ok(vec![2]), |g| g.resolve("n"))
    }

    pub fn w_list(&self) -> Result<Vec<f64>> {
        self.w.as_ref().map_or(Ok(vec![0.1]), |g| g.resolve("w"))
    }

    pub fn method_list(&self) -> Result<Vec<Method>> {
        self.methods
            .as_ref()
            .map_or(Ok(vec![Method::Theorem1]), MethodList::resolve)
    }

    /// σ² and f_D (defaults 1 and 1), with the first entries of the n and
    /// w grids.
    pub fn template(&self) -> Result<FasConfig> {
        let n = self.n_list()?.first().copied().unwrap_or(1);
        let w = self.w_list()?.first().copied().unwrap_or(0.0);
        FasConfig::new(n, w, self.sigma2.unwrap_or(1.0), self.fd.unwrap_or(1.0))
    }

    /// Defaults to 60 linear thresholds with x/σ evenly spaced on [0.05, 3].
    pub fn threshold_grid(&self) -> Result<ThresholdGrid> {
        match (&self.thresholds, &self.thresholds_db) {
            (Some(_), Some(_)) => Err(Error::config(
                "thresholds: give either linear thresholds or thresholds_db, not both",
            )),
            (Some(g), None) => Ok(ThresholdGrid::Linear(g.resolve("thresholds")?)),
            (None, Some(g)) => Ok(ThresholdGrid::Db(g.resolve("thresholds_db")?)),
            (None, None) => {
                let sigma = self.sigma2.unwrap_or(1.0).sqrt();
                Ok(ThresholdGrid::Linear(
                    linspace(0.05, 3.0, 60).into_iter().map(|r| r * sigma).collect(),
                ))
            }
        }
    }

    pub fn monte_carlo(&self) -> MonteCarloSpec {
        let d = MonteCarloSpec::default();
        MonteCarloSpec {
            duration_cycles: self.duration_cycles.unwrap_or(d.duration_cycles),
            sample_rate_mult: self.sample_rate_mult.unwrap_or(d.sample_rate_mult),
            n_sinusoids: self.n_sinusoids.unwrap_or(d.n_sinusoids),
            seed: self.seed.unwrap_or(d.seed),
            trials: self.trials.unwrap_or(d.trials),
        }
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let spec = SweepSpec::new(
            self.threshold_grid()?,
            self.n_list()?,
            self.w_list()?,
            self.method_list()?,
        );
        Ok(if spec.methods.contains(&Method::MonteCarlo) {
            spec.with_sim(self.monte_carlo())
        } else {
            spec
        })
    }
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        1 => vec![start],
        _ => (0..count)
            .map(|i| {
                if i + 1 == count {
                    stop
                } else {
                    start + (stop - start) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

/// Parses `"a,b,c"` or `"start:stop:count"` (count evenly spaced values,
/// both ends included).
pub fn parse_real_grid(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| -> Result<f64> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| Error::config(format!("cannot parse {t:?} as a number")))
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::config("empty grid"));
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(Error::config(format!("range {s:?} must be start:stop:count")));
        };
        let count: usize = c
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("cannot parse count {c:?}")))?;
        if count == 0 {
            return Err(Error::config(format!("range {s:?} has zero points")));
        }
        return Ok(linspace(num(a)?, num(b)?, count));
    }
    s.split(',').map(num).collect()
}

/// Parses `"a,b,c"` or an inclusive range `"a:b"`.
pub fn parse_int_grid(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| -> Result<usize> {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::config(format!("cannot parse {t:?} as a non-negative integer")))
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::config("empty grid"));
    }
    if let Some((a, b)) = s.split_once(':') {
        let (a, b) = (num(a)?, num(b)?);
        if b < a {
            return Err(Error::config(format!("range {s:?} is empty")));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}
