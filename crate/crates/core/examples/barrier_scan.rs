//! |T|², |Rˡ|² and |Rʳ|² of the barrier across its first spectral
//! singularity, tuned to full precision and slightly detuned.

use sst::barrier::BarrierParams;
use sst::scattering::{linspace, scan, Sample};
use sst::singularity::solve_window;

fn peak(z: f64, ks: &[f64]) -> sst::Result<(f64, f64)> {
    let samples = scan(&BarrierParams::new(1.0, z)?.profile(), ks)?;
    Ok(samples
        .iter()
        .map(|s| match s {
            Sample::Finite(a) => (a.k, a.transmission()),
            Sample::Diverged { k, .. } => (*k, f64::INFINITY),
        })
        .fold(
            (f64::NAN, 0.0),
            |best, x| if x.1 > best.1 { x } else { best },
        ))
}

fn main() -> sst::Result<()> {
    let rec = solve_window(0)?;
    println!("singularity: a k = {:.12}, a^2 z = {:.12}", rec.ak, rec.a2z);

    let ks = linspace(rec.ak - 0.01, rec.ak + 0.01, 2001);
    for detune in [0.0, 1e-6, 1e-3, 1e-1] {
        let (k, t2) = peak(rec.a2z * (1.0 + detune), &ks)?;
        println!("z detuned by {detune:>6.0e}: max |T|^2 = {t2:>10.3e} at k = {k:.6}");
    }

    let b = BarrierParams::new(1.0, rec.a2z)?;
    println!(
        "\n{:>10} {:>12} {:>12} {:>12}",
        "k", "|T|^2", "|Rl|^2", "|Rr|^2"
    );
    for s in scan(&b.profile(), &linspace(0.5, 2.0, 7))? {
        if let Sample::Finite(a) = s {
            println!(
                "{:>10.4} {:>12.4e} {:>12.4e} {:>12.4e}",
                a.k,
                a.transmission(),
                a.reflection_left(),
                a.reflection_right()
            );
        }
    }
    Ok(())
}
