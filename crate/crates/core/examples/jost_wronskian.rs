//! Jost solutions of a complex potential: their Wronskian is the same at
//! every position and equals -2ik M22, so it vanishes at a spectral
//! singularity.

use sst::barrier::BarrierParams;
use sst::potential::PiecewisePotential;
use sst::scattering::{jost_coefficients, solution_at, transfer_matrix, wronskian};
use sst::singularity::solve_window;
use sst::Complex64;

fn report(name: &str, p: &PiecewisePotential, k: f64) -> sst::Result<()> {
    let m = transfer_matrix(p, k)?;
    let j = jost_coefficients(&m);
    println!("{name} at k = {k}: -2ik M22 = {:.6e}", wronskian(&m));
    let (x0, x1) = (p.left_edge() - 0.5, p.right_edge() + 0.5);
    for i in 0..5 {
        let x = x0 + (x1 - x0) * i as f64 / 4.0;
        let plus = solution_at(p, k, j.plus_left, x)?;
        let minus = solution_at(p, k, j.minus_left, x)?;
        println!("  x = {x:>6.3}: W = {:.6e}", plus.wronskian(&minus));
    }
    Ok(())
}

fn main() -> sst::Result<()> {
    let p = PiecewisePotential::from_pairs(
        -1.0,
        [
            (0.8, Complex64::new(2.0, 1.5)),
            (1.2, Complex64::new(-1.0, -0.5)),
        ],
    )?;
    report("two-layer potential", &p, 1.7)?;

    let rec = solve_window(0)?;
    let barrier = BarrierParams::new(1.0, rec.a2z)?.profile();
    report("barrier at its first singularity", &barrier, rec.ak)?;
    Ok(())
}
