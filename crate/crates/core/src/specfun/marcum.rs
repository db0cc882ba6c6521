//! First-order Marcum Q-function.
//!
//! Uses the Poisson-mixture series
//!
//! ```text
//! Q1(a, b) = Σ_k  e^{-a²/2} (a²/2)^k / k!  ·  Q(k + 1, b²/2)
//! 1 - Q1(a, b) = Σ_k  e^{-a²/2} (a²/2)^k / k!  ·  P(k + 1, b²/2)
//! ```
//!
//! with `P`, `Q` the regularized incomplete gamma functions. Whichever of
//! `Q1` and `1 - Q1` is the smaller is summed directly. Both summands are
//! log-concave in k, so the sum starts at a Poisson tail cut of the weights,
//! walks through the single peak and stops once the geometric bound on the
//! remaining tail drops below `rel_eps` of the partial sum.

use super::gamma::ln_poisson;
use super::{check_nonneg, gamma_p_int, gamma_q_int, Tolerance};
use crate::error::{Error, Result};

/// exp(-745.2) is below the smallest subnormal.
const UNDERFLOW_EXPONENT: f64 = 745.2;

/// `Q1(a, b)` for a, b ≥ 0.
pub fn marcum_q1(a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    marcum_q1_pair(a, b, tol).map(|(q, _)| q)
}

/// `1 - Q1(a, b)`, accurate when it is small.
///
/// This is the probability that a Rician envelope with line-of-sight
/// amplitude `a` (unit per-component variance) stays below `b`.
pub fn marcum_p1(a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    marcum_q1_pair(a, b, tol).map(|(_, p)| p)
}

/// `(Q1(a, b), 1 - Q1(a, b))`.
pub fn marcum_q1_pair(a: f64, b: f64, tol: Tolerance) -> Result<(f64, f64)> {
    check_nonneg("marcum_q1", "a", a)?;
    check_nonneg("marcum_q1", "b", b)?;
    tol.validate()?;

    if b == 0.0 {
        return Ok((1.0, 0.0));
    }
    let x = 0.5 * b * b;
    if a == 0.0 {
        return Ok(((-x).exp(), -(-x).exp_m1()));
    }
    // Q1 <= exp(-(b-a)^2/2) for b > a, and symmetrically for 1 - Q1.
    let gap = 0.5 * (b - a) * (b - a);
    if gap > UNDERFLOW_EXPONENT {
        return Ok(if b > a { (0.0, 1.0) } else { (1.0, 0.0) });
    }

    let lambda = 0.5 * a * a;
    // The median of the underlying noncentral chi-square sits near a^2 + 2.
    if x >= lambda + 1.0 {
        let q = upper_sum(lambda, x, tol)?;
        Ok((q, 1.0 - q))
    } else {
        let p = lower_sum(lambda, x, tol)?;
        Ok((1.0 - p, p))
    }
}

/// ln(1/delta) for the Poisson tail cut of the mixing weights.
fn tail_log(tol: Tolerance) -> f64 {
    -(tol.rel_eps * 1e-3).ln()
}

/// Running sum `e^m · s` of terms supplied as logarithms, so that sums far
/// below the smallest double still rank their terms correctly.
struct LogSum {
    m: f64,
    s: f64,
}

impl LogSum {
    fn new() -> Self {
        LogSum {
            m: f64::NEG_INFINITY,
            s: 0.0,
        }
    }

    fn add(&mut self, ln_t: f64) {
        if ln_t == f64::NEG_INFINITY {
            return;
        }
        if ln_t > self.m {
            self.s = self.s * (self.m - ln_t).exp() + 1.0;
            self.m = ln_t;
        } else {
            self.s += (ln_t - self.m).exp();
        }
    }

    fn ln(&self) -> f64 {
        self.m + self.s.ln()
    }

    fn value(&self) -> f64 {
        (self.m.exp() * self.s).min(1.0)
    }
}

fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// Stopping rule for a log-concave series past its peak: the geometric
/// bound on the remaining tail is below `rel_eps` of the partial sum.
fn tail_negligible(ln_term: f64, ln_prev: f64, sum: &LogSum, rel_eps: f64) -> bool {
    // NEG_INFINITY before the first term
    if ln_term >= ln_prev {
        return false;
    }
    let ln_r = ln_term - ln_prev;
    // ln(r / (1 - r))
    let ln_ratio = ln_r - (-(ln_r.exp_m1())).ln();
    ln_term + ln_ratio <= rel_eps.ln() + sum.ln()
}

/// Smallest value whose logarithm is taken directly.
const LN_DIRECT_FLOOR: f64 = 1e-280;

/// ln Q(k+1, x) = ln[e^{-x} Σ_{j≤k} x^j/j!], from the top term down when the
/// value is too small to form directly (there k < x and the ratios k/x,
/// k(k-1)/x², ... decay).
fn ln_gamma_q(k: u64, x: f64) -> Result<f64> {
    let q = gamma_q_int(k + 1, x)?;
    if q > LN_DIRECT_FLOOR {
        return Ok(q.ln());
    }
    let mut ratio = 1.0;
    let mut total = 1.0;
    let mut j = k;
    while j > 0 {
        ratio *= j as f64 / x;
        total += ratio;
        if ratio < f64::EPSILON * total {
            break;
        }
        j -= 1;
    }
    Ok(ln_poisson(x, k) + total.ln())
}

/// ln P(k+1, x) = ln[e^{-x} Σ_{j>k} x^j/j!], from the first term up when the
/// value is too small to form directly (there k + 2 > x).
fn ln_gamma_p(k: u64, x: f64) -> Result<f64> {
    let p = gamma_p_int(k + 1, x)?;
    if p > LN_DIRECT_FLOOR {
        return Ok(p.ln());
    }
    let mut ratio = 1.0;
    let mut total = 1.0;
    let mut j = k + 2;
    loop {
        ratio *= x / j as f64;
        total += ratio;
        if ratio < f64::EPSILON * total {
            break;
        }
        j += 1;
    }
    Ok(ln_poisson(x, k + 1) + total.ln())
}

fn not_converged(sum: &LogSum, terms: usize) -> Error {
    Error::Accuracy {
        what: "Marcum Q series",
        partial: sum.value(),
        work: terms,
    }
}

/// Walks shorter than this start at the Poisson cut without searching.
const SEARCH_SPAN: u64 = 128;

/// Index of the largest value of a unimodal sequence on `[lo, hi]`.
fn unimodal_peak<F: Fn(u64) -> Result<f64>>(f: &F, mut lo: u64, mut hi: u64) -> Result<u64> {
    while hi - lo > 2 {
        let m1 = lo + (hi - lo) / 3;
        let m2 = hi - (hi - lo) / 3;
        if f(m1)? < f(m2)? {
            lo = m1 + 1;
        } else {
            hi = m2;
        }
    }
    let mut best = lo;
    for k in lo + 1..=hi {
        if f(k)? > f(best)? {
            best = k;
        }
    }
    Ok(best)
}

/// Cuts a long walk down to the terms that matter. Terms are log-concave in
/// k, so past the peak they fall monotonically; returns the first index from
/// the peak towards `far` whose term is below `ln_drop` relative to the peak,
/// or `far` itself if none is.
fn trim_start<F: Fn(u64) -> Result<f64>>(ln_term: &F, peak: u64, far: u64, ln_drop: f64) -> Result<u64> {
    let floor = ln_term(peak)? + ln_drop;
    if ln_term(far)? > floor {
        return Ok(far);
    }
    // invariant: term(near) > floor >= term(far)
    let (mut near, mut far) = (peak, far);
    while near.abs_diff(far) > 1 {
        let mid = if far > near { near + (far - near) / 2 } else { far + (near - far) / 2 };
        if ln_term(mid)? > floor {
            near = mid;
        } else {
            far = mid;
        }
    }
    Ok(far)
}

/// Σ_k w_k Q(k+1, x): the gamma factor grows with k, so the weight tail below
/// the cut is bounded by the weight tail alone.
fn upper_sum(lambda: f64, x: f64, tol: Tolerance) -> Result<f64> {
    let depth = (2.0 * lambda * tail_log(tol)).sqrt();
    let mut k = (lambda - depth).floor().max(0.0) as u64;
    // the terms cannot grow past this index
    let top = (0.5 * (lambda + (lambda * lambda + 4.0 * lambda * x).sqrt())).ceil() as u64 + 1;
    if top > k + SEARCH_SPAN {
        let ln_term = |j: u64| Ok(ln_poisson(lambda, j) + ln_gamma_q(j, x)?);
        let peak = unimodal_peak(&ln_term, k, top)?;
        // skipped terms number at most `peak`, each below the drop
        let drop = (tol.rel_eps * 1e-3).ln() - ((peak + 1) as f64).ln();
        k = trim_start(&ln_term, peak, k, drop)?;
    }

    let ln_lambda = lambda.ln();
    let ln_x = x.ln();
    let mut ln_w = ln_poisson(lambda, k);
    let mut ln_px = ln_poisson(x, k);
    let mut ln_g = ln_gamma_q(k, x)?;

    let mut sum = LogSum::new();
    let mut ln_prev = f64::NEG_INFINITY;
    let mut terms = 0usize;
    loop {
        let ln_term = ln_w + ln_g;
        sum.add(ln_term);
        terms += 1;
        if tail_negligible(ln_term, ln_prev, &sum, tol.rel_eps) {
            return Ok(sum.value());
        }
        if terms >= tol.max_terms {
            return Err(not_converged(&sum, terms));
        }
        ln_prev = ln_term;
        k += 1;
        let ln_k = (k as f64).ln();
        ln_w += ln_lambda - ln_k;
        ln_px += ln_x - ln_k;
        // Q(k+2, x) = Q(k+1, x) + Pr[Poi(x) = k+1]
        ln_g = ln_add(ln_g, ln_px).min(0.0);
    }
}

/// Σ_k w_k P(k+1, x), walked downward from an upper Poisson cut.
fn lower_sum(lambda: f64, x: f64, tol: Tolerance) -> Result<f64> {
    let l = tail_log(tol);
    let reach = l / 3.0 + (l * l / 9.0 + 2.0 * l * lambda).sqrt();
    let mut k = (lambda + reach).ceil() as u64;
    if k > SEARCH_SPAN {
        let ln_term = |j: u64| Ok(ln_poisson(lambda, j) + ln_gamma_p(j, x)?);
        let peak = unimodal_peak(&ln_term, 0, k)?;
        let drop = (tol.rel_eps * 1e-3).ln() - ((k - peak + 1) as f64).ln();
        k = trim_start(&ln_term, peak, k, drop)?;
    }

    let ln_lambda = lambda.ln();
    let ln_x = x.ln();
    let mut ln_w = ln_poisson(lambda, k);
    let mut ln_px = ln_poisson(x, k);
    let mut ln_g = ln_gamma_p(k, x)?;

    let mut sum = LogSum::new();
    let mut ln_prev = f64::NEG_INFINITY;
    let mut terms = 0usize;
    loop {
        let ln_term = ln_w + ln_g;
        sum.add(ln_term);
        terms += 1;
        if k == 0 || tail_negligible(ln_term, ln_prev, &sum, tol.rel_eps) {
            return Ok(sum.value());
        }
        if terms >= tol.max_terms {
            return Err(not_converged(&sum, terms));
        }
        ln_prev = ln_term;
        // P(k, x) = P(k+1, x) + Pr[Poi(x) = k]
        ln_g = ln_add(ln_g, ln_px).min(0.0);
        let ln_k = (k as f64).ln();
        ln_w += ln_k - ln_lambda;
        ln_px += ln_k - ln_x;
        k -= 1;
    }
}
