use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fas_lcr::harness::{
    compare_methods, emit_csv, read_csv, run_sweep, write_csv, GateStatistic, GridValue, Method,
    MethodList, ResultRow, RunConfig, DEFAULT_MIN_NLCR,
};
use fas_lcr::{Error, Result};

/// Level crossing rate of an N-port fluid antenna system.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// TOML run configuration; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Flags {
    /// Port counts, "2,3,4" or "2:16".
    #[arg(long, global = true)]
    n: Option<String>,
    /// Apertures in wavelengths, "0.1,0.3" or "start:stop:count".
    #[arg(long, global = true)]
    w: Option<String>,
    #[arg(long, global = true)]
    sigma2: Option<f64>,
    /// Maximum Doppler frequency in Hz.
    #[arg(long, global = true)]
    fd: Option<f64>,
    /// Linear thresholds.
    #[arg(long, global = true, allow_hyphen_values = true)]
    thresholds: Option<String>,
    /// Thresholds in dB relative to sigma.
    #[arg(long, global = true, allow_hyphen_values = true)]
    thresholds_db: Option<String>,
    /// Comma-separated methods: theorem1, iid, identical, two_port_series, monte_carlo.
    #[arg(long, global = true)]
    method: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Simulated duration times f_D.
    #[arg(long, global = true)]
    duration_cycles: Option<f64>,
    /// Sample rate divided by f_D.
    #[arg(long, global = true)]
    sample_rate_mult: Option<f64>,
    /// Independent simulation runs per grid point.
    #[arg(long, global = true)]
    trials: Option<u32>,
    /// CSV destination; stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Relative error allowed by `compare`.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and quadrature evaluation.
    Analytic,
    /// Monte-Carlo estimate.
    Simulate,
    /// Any mix of methods over the full grid.
    Sweep,
    /// Gate a candidate method against a reference.
    Compare {
        /// Compare rows from an existing sweep CSV instead of running one.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "theorem1")]
        reference: Method,
        #[arg(long, default_value = "monte_carlo")]
        candidate: Method,
        /// median or max
        #[arg(long, default_value = "median")]
        gate: GateStatistic,
        /// Only points whose reference NLCR exceeds this enter the statistics.
        #[arg(long)]
        min_nlcr: Option<f64>,
    },
}

impl Flags {
    fn into_config(self) -> RunConfig {
        RunConfig {
            n: self.n.map(GridValue::Text),
            w: self.w.map(GridValue::Text),
            sigma2: self.sigma2,
            fd: self.fd,
            thresholds: self.thresholds.map(GridValue::Text),
            thresholds_db: self.thresholds_db.map(GridValue::Text),
            methods: self.method.map(MethodList::Text),
            seed: self.seed,
            duration_cycles: self.duration_cycles,
            sample_rate_mult: self.sample_rate_mult,
            trials: self.trials,
            out: self.out,
            tolerance: self.tolerance,
            ..RunConfig::default()
        }
    }
}

fn sweep(cfg: &RunConfig, forced: Option<Vec<Method>>, analytic_only: bool) -> Result<Vec<ResultRow>> {
    let mut cfg = cfg.clone();
    if let Some(m) = forced {
        let names: Vec<String> = m.iter().map(|m| m.name().to_string()).collect();
        cfg.methods = Some(MethodList::Many(names));
    }
    let spec = cfg.sweep_spec()?;
    if analytic_only && spec.methods.contains(&Method::MonteCarlo) {
        return Err(Error::Config(
            "method: monte_carlo is not available in analytic mode; use simulate or sweep".into(),
        ));
    }
    run_sweep(&spec, &cfg.template()?)
}

fn output(rows: &[ResultRow], cfg: &RunConfig) -> Result<()> {
    match &cfg.out {
        Some(path) => emit_csv(rows, path),
        None => write_csv(rows, std::io::stdout().lock()).map_err(|source| Error::Csv {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = file.merge(cli.flags.into_config());

    match cli.cmd {
        Command::Analytic => output(&sweep(&cfg, None, true)?, &cfg)?,
        Command::Simulate => output(&sweep(&cfg, Some(vec![Method::MonteCarlo]), false)?, &cfg)?,
        Command::Sweep => output(&sweep(&cfg, None, false)?, &cfg)?,
        Command::Compare {
            input,
            reference,
            candidate,
            gate,
            min_nlcr,
        } => {
            let rows = match input {
                Some(path) => read_csv(&path)?,
                None => {
                    let rows = sweep(&cfg, Some(vec![reference, candidate]), false)?;
                    if cfg.out.is_some() {
                        output(&rows, &cfg)?;
                    }
                    rows
                }
            };
            let floor = min_nlcr.or(cfg.min_nlcr).unwrap_or(DEFAULT_MIN_NLCR);
            let summary = compare_methods(&rows, reference, candidate, floor)?;
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{summary}");
            if let Some(tol) = cfg.tolerance {
                if !summary.passes(tol, gate) {
                    let _ = writeln!(stdout, "# tolerance {tol} exceeded");
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fas-lcr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
