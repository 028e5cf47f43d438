//! Spectral singularities of the gain/loss barrier for a few window indices,
//! including negative ones obtained from the mirror rule.
//!
//! cargo run --example singularity_table -- 0 1 2 10 100 -1

use sst::singularity::record_for_index;

fn main() -> sst::Result<()> {
    let mut ns: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if ns.is_empty() {
        ns = vec![0, 1, 2, 10, 100, -1, -2];
    }
    println!(
        "{:>5} {:>14} {:>14} {:>14} {:>14} {:>10}",
        "n", "r", "y", "a k", "a^2 z", "|M22|"
    );
    for n in ns {
        let rec = record_for_index(n)?;
        println!(
            "{:>5} {:>14.9} {:>14.9} {:>14.9} {:>14.9} {:>10.2e}",
            rec.n, rec.r, rec.y, rec.ak, rec.a2z, rec.residual
        );
    }
    Ok(())
}
