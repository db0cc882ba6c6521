//! Crossing rate at a fixed low threshold as the port count grows, for
//! several apertures, with the independent-port bound alongside.
//!
//! `cargo run --release --example port_count_trends -- [x_th] [max N]`

use fas_lcr::channel::FasConfig;
use fas_lcr::harness::{run_sweep, Method, SweepSpec, ThresholdGrid};

fn main() -> fas_lcr::Result<()> {
    let mut args = std::env::args().skip(1);
    let x: f64 = args.next().map_or(0.3, |s| s.parse().expect("x_th must be a number"));
    let max_n: usize = args.next().map_or(24, |s| s.parse().expect("max N must be an integer"));

    let apertures = [0.1, 0.2, 0.3];
    let spec = SweepSpec::new(
        ThresholdGrid::Linear(vec![x]),
        (1..=max_n).collect(),
        apertures.to_vec(),
        vec![Method::Theorem1, Method::Iid],
    );
    let rows = run_sweep(&spec, &FasConfig::new(1, 0.0, 1.0, 1.0)?)?;
    let nlcr = |n: usize, w: f64, m: Method| {
        rows.iter()
            .find(|r| r.n == n && r.w == w && r.method == m)
            .map(|r| r.nlcr)
            .expect("grid point present")
    };

    println!("NLCR at x_th = {x} sigma");
    print!("{:>4}", "N");
    for w in apertures {
        print!(" {:>12}", format!("W = {w}"));
    }
    println!(" {:>12}", "iid");
    for n in 1..=max_n {
        print!("{n:>4}");
        for w in apertures {
            print!(" {:>12.4e}", nlcr(n, w, Method::Theorem1));
        }
        println!(" {:>12.4e}", nlcr(n, 0.1, Method::Iid));
    }
    Ok(())
}
