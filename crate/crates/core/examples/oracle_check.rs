//! Cross-checks the analytic transfer matrix against an RK4 integration of
//! the Schrödinger equation, and measures the integrator's order.

use sst::oracle::{compare, transfer_matrix_numeric, IntegratorConfig};
use sst::sampling::PotentialSampler;
use sst::scattering::transfer_matrix;

fn main() -> sst::Result<()> {
    let mut sampler = PotentialSampler::new(7);
    let cfg = IntegratorConfig::default();
    println!(
        "{:>3} {:>7} {:>8} {:>12}",
        "#", "layers", "k", "max rel dev"
    );
    for i in 0..10 {
        let p = sampler.complex_potential();
        let k = sampler.uniform(0.1, 20.0);
        println!(
            "{i:>3} {:>7} {k:>8.3} {:>12.2e}",
            p.layers().len(),
            compare(&p, k, cfg)?
        );
    }

    let p = sampler.complex_potential();
    let exact = transfer_matrix(&p, 3.0)?;
    println!("\nconvergence of M22 on one potential:");
    let mut previous: Option<f64> = None;
    for steps in [50, 100, 200, 400, 800] {
        let m = transfer_matrix_numeric(&p, 3.0, IntegratorConfig::with_steps(steps))?;
        let err = (m.m22 - exact.m22).norm();
        let order = previous
            .map(|e| format!("{:.2}", (e / err).log2()))
            .unwrap_or_default();
        println!("  {steps:>4} steps: error {err:.3e}  order {order}");
        previous = Some(err);
    }
    Ok(())
}
