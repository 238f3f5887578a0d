//! Sweeps both three-path detector families over θ and prints a coarse table.
//!
//! Run with `cargo run --example figure_sweeps`.

use npath_duality::scenarios::{closed_form_deviation, default_grid, sweep_grid};
use npath_duality::Family;

fn main() -> npath_duality::Result<()> {
    let grid = default_grid();
    for family in [Family::Figure1, Family::Figure2] {
        let rows = sweep_grid(family, &grid)?;
        println!(
            "{family}: {} points, closed-form deviation {:.1e}",
            rows.len(),
            closed_form_deviation(family, &rows)?
        );
        println!(
            "  {:>8} {:>10} {:>10} {:>10} {:>10}",
            "θ/deg", "D²", "C²", "bound²", "D²+C²"
        );
        for r in rows.iter().step_by(15) {
            println!(
                "  {:>8.1} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                r.theta.to_degrees(),
                r.d2,
                r.c2,
                r.db2_bound,
                r.sum_dc
            );
        }
    }
    Ok(())
}
