//! |T|² against ω/ω₀ for two nearly identical waveguides: the resonance
//! moves when the geometry changes in its sixth digit.
//!
//! Pass a path to also write the fine scan of the first geometry as CSV.

use std::fmt::Write as _;

use sst::waveguide::{GainMedium, ScanState, WaveguideSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = GainMedium::new(0.2, 1.25)?;
    let omega_ref = 5.0;
    let geometries = [(1004.17, 62.0464), (1004.0, 62.0)];

    for (alpha, beta) in geometries {
        let g = WaveguideSpec::new(alpha, beta, 1, medium)?;
        let rows = g.frequency_scan(0.995, 1.005, 100_001, omega_ref);
        let (ratio, t2) = rows
            .iter()
            .filter_map(|r| r.t2().map(|t| (r.omega_ratio, t)))
            .fold((f64::NAN, 0.0), |b, x| if x.1 > b.1 { x } else { b });
        let below = rows
            .iter()
            .filter(|r| r.state == ScanState::BelowCutoff)
            .count();
        println!(
            "alpha = {alpha} nm, beta = {beta} nm: cutoff {:.5} eV, peak |T|^2 = {t2:.3e} at w/w0 = {ratio:.7} ({below} samples below cutoff)",
            g.cutoff_ev()
        );
    }

    if let Some(path) = std::env::args().nth(1) {
        let g = WaveguideSpec::new(geometries[0].0, geometries[0].1, 1, medium)?;
        let mut csv = String::from("omega_ratio,T2,Rl2,Rr2\n");
        for r in g.frequency_scan(0.999, 1.001, 2001, omega_ref) {
            if let ScanState::Finite { t2, rl2, rr2 } = r.state {
                writeln!(csv, "{},{t2},{rl2},{rr2}", r.omega_ratio)?;
            }
        }
        std::fs::write(&path, csv)?;
        println!("wrote {path}");
    }
    Ok(())
}
