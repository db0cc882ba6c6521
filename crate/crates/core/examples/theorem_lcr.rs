//! Exact N-port crossing rate next to the independent-port and
//! identical-port closed forms.
//!
//! `cargo run --release --example theorem_lcr -- [N] [W]`

use fas_lcr::analytic::{lcr_identical, lcr_iid, lcr_theorem1, QuadratureSpec, Threshold};
use fas_lcr::channel::{correlation_profile, FasConfig};

fn main() -> fas_lcr::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(4, |s| s.parse().expect("N must be an integer"));
    let w: f64 = args.next().map_or(0.1, |s| s.parse().expect("W must be a number"));

    let f_d = 100.0;
    let cfg = FasConfig::new(n, w, 1.0, f_d)?;
    let profile = correlation_profile(&cfg)?;
    let quad = QuadratureSpec::default();

    println!("NLCR = L/f_D for N = {n}, W = {w}");
    println!("{:>8} {:>8} {:>12} {:>12} {:>12}", "x/sigma", "dB", "exact", "iid", "identical");
    for i in 0..=24 {
        let x = Threshold::new(0.05 + 0.125 * i as f64)?;
        println!(
            "{:>8.3} {:>8.2} {:>12.6} {:>12.6} {:>12.6}",
            x.linear(),
            x.db(cfg.sigma2),
            lcr_theorem1(&cfg, &profile, x, &quad)? / f_d,
            lcr_iid(&cfg, x)? / f_d,
            lcr_identical(&cfg, x)? / f_d,
        );
    }
    Ok(())
}
