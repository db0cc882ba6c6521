//! Simulated crossing rate of the selected port, with the single-port
//! sanity checks.
//!
//! `cargo run --release --example monte_carlo -- [N] [W] [cycles] [seed]`

use fas_lcr::analytic::{lcr_theorem1, QuadratureSpec, Threshold};
use fas_lcr::channel::{correlation_profile, CorrelationProfile, FasConfig};
use fas_lcr::sim::{estimate_lcr, simulate_selected, slope_moment_check, SimParams};

fn main() -> fas_lcr::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(3, |s| s.parse().expect("N must be an integer"));
    let w: f64 = args.next().map_or(0.2, |s| s.parse().expect("W must be a number"));
    let cycles: f64 = args.next().map_or(1e4, |s| s.parse().expect("cycles must be a number"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed must be an integer"));

    let f_d = 50.0;
    let cfg = FasConfig::new(n, w, 1.0, f_d)?;
    let profile = correlation_profile(&cfg)?;
    let sim = SimParams::for_doppler(f_d, cycles, SimParams::DEFAULT_RATE_MULTIPLIER, seed);

    let thresholds: Vec<Threshold> = (1..=15)
        .map(|i| Threshold::new(0.2 * i as f64))
        .collect::<Result<_, _>>()?;
    let estimates = estimate_lcr(&cfg, &profile, &sim, &thresholds)?;
    let quad = QuadratureSpec::default();

    println!("N = {n}, W = {w}, {cycles} Doppler cycles, seed {seed}");
    println!("{:>8} {:>10} {:>10} {:>10} {:>8}", "x", "crossings", "MC", "exact", "rel");
    for (x, est) in thresholds.iter().zip(&estimates) {
        let exact = lcr_theorem1(&cfg, &profile, *x, &quad)? / f_d;
        println!(
            "{:>8.2} {:>10} {:>10.4} {:>10.4} {:>+8.3}",
            x.linear(),
            est.crossings,
            est.nlcr,
            exact,
            (est.nlcr - exact) / exact
        );
    }

    let single = FasConfig::new(1, 0.0, 1.0, f_d)?;
    let series = simulate_selected(&single, &CorrelationProfile::from_mu(vec![0.0])?, &sim, 0)?;
    let slope = slope_moment_check(&series)?;
    let expected = (std::f64::consts::PI / 2.0).sqrt() * f_d;
    println!(
        "\nsingle port: mean square {:.4}, slope moment {slope:.3} (expected {expected:.3})",
        series.mean_square()
    );
    Ok(())
}
