//! Tabulates the special functions behind the crossing-rate expressions.
//!
//! `cargo run --example special_functions`

use fas_lcr::specfun::{
    bessel_i0, bessel_i0_scaled, bessel_j0, gamma_p_int, lower_gamma_int, marcum_p1, marcum_q1,
    Tolerance,
};

fn main() -> fas_lcr::Result<()> {
    let tol = Tolerance::default();

    println!("{:>6} {:>14} {:>14} {:>14}", "x", "J0(x)", "I0(x)", "e^-x I0(x)");
    for x in [0.0, 0.5, 1.0, 2.404825557695773, 5.0, 20.0, 100.0] {
        println!(
            "{x:>6.3} {:>14.6e} {:>14.6e} {:>14.6e}",
            bessel_j0(x)?,
            bessel_i0(x)?,
            bessel_i0_scaled(x)?
        );
    }

    println!("\nMarcum Q1(a, b) and its complement");
    for (a, b) in [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 3.0), (10.0, 12.0), (30.0, 20.0)] {
        let q = marcum_q1(a, b, tol)?;
        let p = marcum_p1(a, b, tol)?;
        println!("  a = {a:>4}  b = {b:>4}  Q1 = {q:.12e}  1-Q1 = {p:.12e}");
    }
    // at a = 0 the function reduces to a Rayleigh tail
    let b: f64 = 2.0;
    println!("  Q1(0, 2) - exp(-2) = {:e}", marcum_q1(0.0, b, tol)? - (-b * b / 2.0).exp());

    println!("\nLower incomplete gamma, integer order");
    for (k, x) in [(0u64, 1.0), (2, 5.0), (10, 3.0), (50, 60.0)] {
        println!(
            "  gamma({}, {x}) = {:.10e}   P({}, {x}) = {:.10e}",
            k + 1,
            lower_gamma_int(k, x)?,
            k + 1,
            gamma_p_int(k + 1, x)?
        );
    }
    Ok(())
}
