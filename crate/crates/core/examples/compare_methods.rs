//! Reads a sweep CSV back and gates one method against another, the way
//! `fas-lcr compare --input` does.
//!
//! `cargo run --release --example compare_methods -- [sweep.csv] [tolerance]`

use std::path::PathBuf;

use fas_lcr::channel::FasConfig;
use fas_lcr::harness::{
    compare_methods, emit_csv, read_csv, run_sweep, GateStatistic, Method, MonteCarloSpec,
    SweepSpec, ThresholdGrid, DEFAULT_MIN_NLCR,
};

fn main() -> fas_lcr::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from);
    let tolerance: f64 = args.next().map_or(0.05, |s| s.parse().expect("tolerance must be a number"));

    let rows = match path {
        Some(p) => read_csv(&p)?,
        None => {
            let spec = SweepSpec::new(
                ThresholdGrid::Linear((1..=12).map(|i| 0.2 * i as f64).collect()),
                vec![2],
                vec![0.1],
                vec![Method::Theorem1, Method::TwoPortSeries, Method::MonteCarlo],
            )
            .with_sim(MonteCarloSpec {
                duration_cycles: 5e3,
                ..MonteCarloSpec::default()
            });
            let rows = run_sweep(&spec, &FasConfig::new(2, 0.1, 1.0, 10.0)?)?;
            let tmp = std::env::temp_dir().join("fas_lcr_compare_example.csv");
            emit_csv(&rows, &tmp)?;
            read_csv(&tmp)?
        }
    };

    for (reference, candidate) in [
        (Method::Theorem1, Method::TwoPortSeries),
        (Method::Theorem1, Method::MonteCarlo),
    ] {
        match compare_methods(&rows, reference, candidate, DEFAULT_MIN_NLCR) {
            Ok(summary) => {
                println!("{summary}");
                let verdict = if summary.passes(tolerance, GateStatistic::Median) {
                    "within"
                } else {
                    "outside"
                };
                println!("# median {verdict} tolerance {tolerance}\n");
            }
            Err(e) => println!("{candidate} vs {reference}: {e}\n"),
        }
    }
    Ok(())
}
