//! Grid evidence that only one of the two cosh q branches produces
//! singularities: the plus branch never crosses its partner curve.

use sst::singularity::{scan_plus_branch, window_brackets, Branch, WindowIndex, WINDOW_GRID};

fn main() {
    let report = scan_plus_branch(20);
    println!(
        "{:>3} {:>14} {:>16} {:>14}",
        "n", "plus crossings", "min |q+ - q~+|", "minus crossings"
    );
    for w in &report.windows {
        let (minus, _) = window_brackets(WindowIndex(w.n), Branch::Minus, WINDOW_GRID);
        println!(
            "{:>3} {:>14} {:>16.4e} {:>14}",
            w.n,
            w.sign_changes,
            w.min_abs_diff,
            minus.len()
        );
    }
    println!(
        "plus branch has no solution for n <= 20: {}",
        report.is_empty()
    );
}
