//! Newton search for real zeros of M22 in the (k, θ) plane. The barrier
//! family is compared against the dedicated solver, then an asymmetric
//! gain/loss pair is searched from a few seeds.

use sst::potential::PiecewisePotential;
use sst::singularity::{barrier_family, find_generic, solve_window};
use sst::Complex64;

/// Gain on a short layer, loss on a longer one, with overall strength θ.
fn lopsided(theta: f64) -> sst::Result<PiecewisePotential> {
    PiecewisePotential::from_pairs(
        -0.5,
        [
            (0.5, Complex64::new(0.0, theta)),
            (1.5, Complex64::new(0.2, -0.3 * theta)),
        ],
    )
}

fn main() -> sst::Result<()> {
    for (n, seed) in [(0u32, (1.0, 2.0)), (1, (4.3, 13.3))] {
        let g = find_generic(barrier_family, seed.0, seed.1)?;
        let rec = solve_window(n)?;
        println!(
            "barrier n = {n}: k = {:.12} (solver {:.12}), a^2 z = {:.12} (solver {:.12}), {} iterations",
            g.k, rec.ak, g.theta, rec.a2z, g.iterations
        );
    }

    println!("\nasymmetric pair:");
    for (k0, t0) in [(1.0, 2.0), (2.0, 4.0), (3.0, 6.0), (0.5, 1.0)] {
        match find_generic(lopsided, k0, t0) {
            Ok(g) => println!(
                "  seed ({k0}, {t0}) -> k = {:.10}, theta = {:.10}, |M22| = {:.1e}",
                g.k, g.theta, g.m22_abs
            ),
            Err(e) => println!("  seed ({k0}, {t0}) -> {e}"),
        }
    }
    Ok(())
}
