//! Waveguide geometries that put the first few spectral singularities at a
//! real frequency, for a fixed gain medium.

use sst::waveguide::{singular_design, DesignTarget, GainMedium};

fn main() -> sst::Result<()> {
    let medium = GainMedium::new(0.2, 1.25)?;
    println!("gain strength hs = {} eV", medium.s_ev());
    println!(
        "{:>3} {:>3} {:>10} {:>12} {:>10}",
        "n", "m", "hw (eV)", "alpha (nm)", "beta (nm)"
    );
    for n in 0..3 {
        for m in 1..=2 {
            let d = singular_design(n, m, medium, DesignTarget::Frequency(5.0))?;
            println!(
                "{n:>3} {m:>3} {:>10.4} {:>12.4} {:>10.5}",
                d.omega_nm_ev, d.alpha_nm, d.beta_nm
            );
        }
    }

    // Fixing the length instead gives the operating frequency.
    let d = singular_design(0, 1, medium, DesignTarget::Alpha(2000.0))?;
    println!(
        "\nalpha = 2000 nm: hw = {:.6} eV, beta = {:.4} nm",
        d.omega_nm_ev, d.beta_nm
    );
    Ok(())
}
