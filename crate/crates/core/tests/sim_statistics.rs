use fas_lcr::analytic::Threshold;
use fas_lcr::channel::{correlation_profile, CorrelationProfile, FasConfig};
use fas_lcr::sim::{
    assemble_port_envelopes, count_crossings, crossing_counts, estimate_lcr, estimate_lcr_trials,
    fas_select, generate_base_processes, simulate_selected, EnvelopeSeries, SimParams,
};
use fas_lcr::specfun::bessel_j0;
use fas_lcr::Error;

const F_D: f64 = 20.0;

fn params(cycles: f64, seed: u64) -> SimParams {
    SimParams::for_doppler(F_D, cycles, SimParams::DEFAULT_RATE_MULTIPLIER, seed)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let (ma, mb) = (mean(a), mean(b));
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}

#[test]
fn components_have_half_variance() {
    let cfg = FasConfig::new(2, 0.1, 1.0, F_D).unwrap();
    let base = generate_base_processes(&cfg, &params(1e4, 3)).unwrap();
    assert_eq!(base.len(), 6);
    for s in base.series() {
        let m = mean(s);
        let var = s.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / s.len() as f64;
        assert!((var - 0.5).abs() < 0.015, "variance {var}");
        assert!(m.abs() < 0.02);
    }
}

#[test]
fn autocorrelation_follows_clarke() {
    let cfg = FasConfig::new(1, 0.0, 1.0, F_D).unwrap();
    let sim = params(1e4, 5);
    let base = generate_base_processes(&cfg, &sim).unwrap();
    let x = base.x(0);
    let samples_per_cycle = sim.sample_rate / F_D;
    let r0 = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
    for tau_fd in [0.1, 0.25, 0.5] {
        let lag = (tau_fd * samples_per_cycle).round() as usize;
        let n = x.len() - lag;
        let r = x[..n].iter().zip(&x[lag..]).map(|(a, b)| a * b).sum::<f64>() / n as f64;
        let want = bessel_j0(2.0 * std::f64::consts::PI * tau_fd).unwrap();
        assert!((r / r0 - want).abs() < 0.03, "lag {tau_fd}: {} vs {want}", r / r0);
    }
}

#[test]
fn port_power_and_correlation() {
    let sigma2 = 2.5;
    let cfg = FasConfig::new(3, 0.3, sigma2, F_D).unwrap();
    let profile = correlation_profile(&cfg).unwrap();
    let base = generate_base_processes(&cfg, &params(1e4, 11)).unwrap();
    let ports = assemble_port_envelopes(&cfg, &profile, &base).unwrap();
    for p in &ports {
        assert!((p.mean_square() / sigma2 - 1.0).abs() < 0.03);
    }
    // envelope powers of jointly Gaussian ports correlate as |μ|²
    let power = |p: &EnvelopeSeries| p.samples().iter().map(|v| v * v).collect::<Vec<_>>();
    let rho = correlation(&power(&ports[0]), &power(&ports[1])).sqrt();
    assert!((rho - 0.78996).abs() < 0.03, "port correlation {rho}");
}

#[test]
fn colocated_port_is_bit_identical() {
    let cfg = FasConfig::new(2, 0.0, 1.0, F_D).unwrap();
    let profile = CorrelationProfile::from_mu(vec![0.0, 1.0]).unwrap();
    let base = generate_base_processes(&cfg, &params(200.0, 1)).unwrap();
    let ports = assemble_port_envelopes(&cfg, &profile, &base).unwrap();
    assert_eq!(ports[0].samples(), ports[1].samples());
}

#[test]
fn seeded_runs_are_reproducible() {
    let cfg = FasConfig::new(3, 0.2, 1.0, F_D).unwrap();
    let profile = correlation_profile(&cfg).unwrap();
    let a = simulate_selected(&cfg, &profile, &params(300.0, 42), 0).unwrap();
    let b = simulate_selected(&cfg, &profile, &params(300.0, 42), 0).unwrap();
    let c = simulate_selected(&cfg, &profile, &params(300.0, 43), 0).unwrap();
    let d = simulate_selected(&cfg, &profile, &params(300.0, 42), 1).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.samples(), c.samples());
    assert_ne!(a.samples(), d.samples());
}

#[test]
fn trials_pool_their_counts() {
    let cfg = FasConfig::new(2, 0.2, 1.0, F_D).unwrap();
    let profile = correlation_profile(&cfg).unwrap();
    let sim = params(500.0, 9);
    let x = [Threshold::new(0.5).unwrap(), Threshold::new(1.0).unwrap()];
    let one = estimate_lcr(&cfg, &profile, &sim, &x).unwrap();
    assert_eq!(one, estimate_lcr_trials(&cfg, &profile, &sim, &x, 1).unwrap());

    let pooled = estimate_lcr_trials(&cfg, &profile, &sim, &x, 3).unwrap();
    for (i, th) in x.iter().enumerate() {
        let total: u64 = (0..3)
            .map(|t| {
                let s = simulate_selected(&cfg, &profile, &sim, t).unwrap();
                count_crossings(&s, *th, F_D).unwrap().crossings
            })
            .sum();
        assert_eq!(pooled[i].crossings, total);
        assert!((pooled[i].duration - 3.0 * one[i].duration).abs() < 1e-9);
        assert!((pooled[i].nlcr - pooled[i].rate / F_D).abs() < 1e-15);
    }
}

#[test]
fn up_and_down_crossings_alternate() {
    let cfg = FasConfig::new(4, 0.3, 1.0, F_D).unwrap();
    let profile = correlation_profile(&cfg).unwrap();
    let s = simulate_selected(&cfg, &profile, &params(1000.0, 2), 0).unwrap();
    for x in [0.1, 0.5, 1.0, 1.5, 2.5] {
        let (down, up) = crossing_counts(&s, x);
        assert!(down.abs_diff(up) <= 1, "x = {x}: {down} down, {up} up");
    }
}

#[test]
fn selection_dominates_every_port() {
    let cfg = FasConfig::new(4, 0.25, 1.0, F_D).unwrap();
    let profile = correlation_profile(&cfg).unwrap();
    let base = generate_base_processes(&cfg, &params(200.0, 8)).unwrap();
    let ports = assemble_port_envelopes(&cfg, &profile, &base).unwrap();
    let best = fas_select(&ports).unwrap();
    for p in &ports {
        assert!(best.samples().iter().zip(p.samples()).all(|(b, v)| b >= v));
    }
    for (i, b) in best.samples().iter().enumerate() {
        assert!(ports.iter().any(|p| p.samples()[i] == *b));
    }
}

#[test]
fn invalid_parameters_are_config_errors() {
    let cfg = FasConfig::new(2, 0.1, 1.0, F_D).unwrap();
    let slow = SimParams::for_doppler(F_D, 1e3, 8.0, 1);
    assert!(matches!(generate_base_processes(&cfg, &slow), Err(Error::Config(_))));
    let short = SimParams::for_doppler(F_D, 10.0, 64.0, 1);
    assert!(matches!(generate_base_processes(&cfg, &short), Err(Error::Config(_))));
    let few = SimParams {
        n_sinusoids: 2,
        ..params(200.0, 1)
    };
    assert!(matches!(generate_base_processes(&cfg, &few), Err(Error::Config(_))));
}
