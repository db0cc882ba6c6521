//! Level crossing rate of N-port fluid antenna systems.
//!
//! A fluid antenna switches a single radiating element among N closely
//! spaced ports and always uses the strongest one. This crate computes how
//! often that selected envelope crosses a level, both from the exact
//! analytical expression ([`analytic`]) and from a Monte-Carlo simulation of
//! spatially correlated, time-varying Rayleigh fading ([`sim`]), and drives
//! parameter sweeps comparing the two ([`harness`]).
//!
//! ```
//! use fas_lcr::analytic::{lcr_theorem1, QuadratureSpec, Threshold};
//! use fas_lcr::channel::{correlation_profile, FasConfig};
//!
//! let cfg = FasConfig::new(3, 0.2, 1.0, 100.0)?;
//! let profile = correlation_profile(&cfg)?;
//! let rate = lcr_theorem1(&cfg, &profile, Threshold::new(0.5)?, &QuadratureSpec::default())?;
//! assert!(rate > 0.0 && rate < 100.0);
//! # Ok::<(), fas_lcr::Error>(())
//! ```

pub mod analytic;
pub mod channel;
pub mod error;
pub mod harness;
pub mod quadrature;
pub mod sim;
pub mod specfun;

pub use error::{Error, Result};
