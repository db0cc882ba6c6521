//! Special functions needed by the crossing-rate analytics.
//!
//! Everything here is real-argument, double precision and pure. The Bessel
//! routines cover J₀ and the exponentially scaled I₀; the gamma routines are
//! restricted to integer order, which is all the two-port series and the
//! Marcum-Q series need.

mod bessel;
mod gamma;
mod marcum;

pub use bessel::{bessel_i0, bessel_i0_scaled, bessel_j0};
pub use gamma::{gamma_p_int, gamma_q_int, ln_factorial, lower_gamma_int};
pub use marcum::{marcum_p1, marcum_q1, marcum_q1_pair};

use crate::error::{Error, Result};

/// Truncation control for the infinite series in this crate.
///
/// A series stops once the next term can no longer move the partial sum by
/// more than `rel_eps` (relative); `max_terms` bounds the number of terms
/// actually summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_eps: f64,
    pub max_terms: usize,
}

impl Tolerance {
    pub fn new(rel_eps: f64, max_terms: usize) -> Result<Self> {
        let tol = Tolerance { rel_eps, max_terms };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_eps > 0.0 && self.rel_eps < 1.0) {
            return Err(Error::config(format!(
                "tolerance rel_eps must lie in (0, 1), got {}",
                self.rel_eps
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::config("tolerance max_terms must be at least 1"));
        }
        Ok(())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_eps: 1e-12,
            max_terms: 1000,
        }
    }
}

fn check_finite(func: &'static str, name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("{name} must be finite, got {x}")))
    }
}

fn check_nonneg(func: &'static str, name: &str, x: f64) -> Result<()> {
    check_finite(func, name, x)?;
    if x < 0.0 {
        return Err(Error::domain(func, format!("{name} must be >= 0, got {x}")));
    }
    Ok(())
}
