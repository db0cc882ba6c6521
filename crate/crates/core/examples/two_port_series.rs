//! The two-port series against the general integral, and its approach to
//! the identical-port limit as the correlation tends to one.
//!
//! `cargo run --release --example two_port_series`

use fas_lcr::analytic::{
    lcr_identical, lcr_theorem1, lcr_two_port_series, QuadratureSpec, Threshold,
    ANALYTIC_SERIES_TOLERANCE,
};
use fas_lcr::channel::{CorrelationProfile, FasConfig};

fn main() -> fas_lcr::Result<()> {
    let cfg = FasConfig::new(2, 0.0, 1.0, 1.0)?;
    let quad = QuadratureSpec::default();

    println!("series vs integral, relative difference");
    for mu in [0.0, 0.3, 0.6, 0.9, 0.99] {
        let profile = CorrelationProfile::from_mu(vec![0.0, mu])?;
        let worst = (1..=20)
            .map(|i| {
                let x = Threshold::new(0.05 + (3.0 - 0.05) * (i - 1) as f64 / 19.0)?;
                let s = lcr_two_port_series(&cfg, mu, x, ANALYTIC_SERIES_TOLERANCE)?;
                let t = lcr_theorem1(&cfg, &profile, x, &quad)?;
                Ok((s - t).abs() / t)
            })
            .collect::<fas_lcr::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("  mu = {mu:<5} max {worst:.2e}");
    }

    println!("\nseries / identical-port rate as mu -> 1");
    print!("{:>8}", "x/sigma");
    let mus = [0.9, 0.99, 1.0 - 1e-4, 1.0 - 1e-6];
    for mu in mus {
        print!(" {:>12}", format!("1-{:.0e}", 1.0 - mu));
    }
    println!();
    for x in [0.05, 0.3, 0.7, 1.0, 1.5, 2.0, 3.0] {
        let th = Threshold::new(x)?;
        print!("{x:>8}");
        for mu in mus {
            let ratio = lcr_two_port_series(&cfg, mu, th, ANALYTIC_SERIES_TOLERANCE)?
                / lcr_identical(&cfg, th)?;
            print!(" {ratio:>12.6}");
        }
        println!();
    }
    Ok(())
}
