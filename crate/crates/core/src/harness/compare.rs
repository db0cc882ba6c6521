use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Method, ResultRow};
use crate::error::{Error, Result};

/// Statistic that a comparison gate is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GateStatistic {
    #[default]
    Median,
    Max,
}

impl FromStr for GateStatistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "median" => Ok(GateStatistic::Median),
            "max" => Ok(GateStatistic::Max),
            other => Err(Error::config(format!("gate must be median or max, got {other:?}"))),
        }
    }
}

/// Reference and candidate values at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparePoint {
    pub n: usize,
    pub w: f64,
    pub threshold: f64,
    pub reference: f64,
    pub candidate: f64,
    pub rel_error: f64,
    /// Whether the reference NLCR clears the floor used for the statistics.
    pub in_region: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareSummary {
    pub reference: Method,
    pub candidate: Method,
    pub min_nlcr: f64,
    pub points: Vec<ComparePoint>,
    /// Over in-region points; NaN if there are none.
    pub max_rel_error: f64,
    /// Over in-region points; NaN if there are none.
    pub median_rel_error: f64,
}

impl CompareSummary {
    pub fn region_len(&self) -> usize {
        self.points.iter().filter(|p| p.in_region).count()
    }

    /// False when the gated statistic exceeds `tolerance` or no point lies in
    /// the region.
    pub fn passes(&self, tolerance: f64, gate: GateStatistic) -> bool {
        let stat = match gate {
            GateStatistic::Median => self.median_rel_error,
            GateStatistic::Max => self.max_rel_error,
        };
        stat <= tolerance
    }
}

impl fmt::Display for CompareSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n,w,threshold_linear,{},{},rel_error,in_region", self.reference, self.candidate)?;
        for p in &self.points {
            writeln!(
                f,
                "{},{},{},{},{},{},{}",
                p.n, p.w, p.threshold, p.reference, p.candidate, p.rel_error, p.in_region
            )?;
        }
        write!(
            f,
            "# {} vs {}: {} points, {} with reference NLCR > {}; median rel error {:.4}, max {:.4}",
            self.candidate,
            self.reference,
            self.points.len(),
            self.region_len(),
            self.min_nlcr,
            self.median_rel_error,
            self.max_rel_error
        )
    }
}

type Key = (usize, u64, u64);

fn key(r: &ResultRow) -> Key {
    (r.n, r.w.to_bits(), r.threshold_linear.to_bits())
}

/// Relative error of `candidate` rows against `reference` rows on their
/// shared grid. Statistics cover points where the reference NLCR exceeds
/// `min_nlcr`. The two methods must cover exactly the same grid.
pub fn compare_methods(
    rows: &[ResultRow],
    reference: Method,
    candidate: Method,
    min_nlcr: f64,
) -> Result<CompareSummary> {
    let pick = |m: Method| -> BTreeMap<Key, &ResultRow> {
        rows.iter().filter(|r| r.method == m).map(|r| (key(r), r)).collect()
    };
    let refs = pick(reference);
    let cands = pick(candidate);
    if refs.is_empty() || cands.is_empty() {
        return Err(Error::config(format!(
            "comparison needs rows for both {reference} and {candidate}"
        )));
    }
    if refs.keys().ne(cands.keys()) {
        let shared = refs.keys().filter(|k| cands.contains_key(k)).count();
        return Err(Error::config(format!(
            "{reference} and {candidate} rows cover different grids ({} vs {} points, {shared} shared)",
            refs.len(),
            cands.len()
        )));
    }

    let mut points: Vec<ComparePoint> = refs
        .iter()
        .map(|(k, r)| {
            let c = cands[k];
            let rel_error = if r.nlcr == c.nlcr {
                0.0
            } else {
                (c.nlcr - r.nlcr).abs() / r.nlcr.abs()
            };
            ComparePoint {
                n: r.n,
                w: r.w,
                threshold: r.threshold_linear,
                reference: r.nlcr,
                candidate: c.nlcr,
                rel_error,
                in_region: r.nlcr > min_nlcr,
            }
        })
        .collect();
    // keep the row order of the input sweep
    let order: BTreeMap<Key, usize> = rows
        .iter()
        .enumerate()
        .rev()
        .map(|(i, r)| (key(r), i))
        .collect();
    points.sort_by_key(|p| order[&(p.n, p.w.to_bits(), p.threshold.to_bits())]);

    let mut errs: Vec<f64> = points.iter().filter(|p| p.in_region).map(|p| p.rel_error).collect();
    errs.sort_by(f64::total_cmp);
    let (median, max) = if errs.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        let m = errs.len();
        let median = if m % 2 == 1 {
            errs[m / 2]
        } else {
            0.5 * (errs[m / 2 - 1] + errs[m / 2])
        };
        (median, errs[m - 1])
    };

    Ok(CompareSummary {
        reference,
        candidate,
        min_nlcr,
        points,
        max_rel_error: max,
        median_rel_error: median,
    })
}
