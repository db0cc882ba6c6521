//! Port correlations along the aperture and the joint envelope density.
//!
//! `cargo run --example correlation_profile -- [N] [W]`

use fas_lcr::channel::{correlation_profile, joint_pdf, EnvelopePoint, FasConfig};

fn main() -> fas_lcr::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(6, |s| s.parse().expect("N must be an integer"));
    let w: f64 = args.next().map_or(0.3, |s| s.parse().expect("W must be a number"));

    let cfg = FasConfig::new(n, w, 1.0, 100.0)?;
    if !cfg.in_range() {
        println!("note: W = {w} is outside the admissible aperture range");
    }
    let profile = correlation_profile(&cfg)?;
    println!("N = {n}, W = {w} wavelengths");
    for (k, mu) in profile.mu().iter().enumerate() {
        let pos = if n > 1 { w * k as f64 / (n - 1) as f64 } else { 0.0 };
        println!("  port {:>2}  position {pos:.4}  mu = {mu:+.6}", k + 1);
    }

    let point = EnvelopePoint::new(vec![0.8; n])?;
    println!("joint density at all envelopes = 0.8: {:.6e}", joint_pdf(&cfg, &profile, &point)?);
    Ok(())
}
