//! Unambiguous discrimination needs linearly independent detector states.
//! The Gram-matrix rank decides it.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

use npath_duality::linalg::DEFAULT_RANK_TOL;
use npath_duality::scenarios::{degenerate_detectors, figure1};
use npath_duality::{numerical_rank, uqsd_feasible, DetectorSet};

fn show(label: &str, d: &DetectorSet) -> npath_duality::Result<()> {
    let rank = numerical_rank(&d.gram(), DEFAULT_RANK_TOL)?;
    println!(
        "{label:<28} N = {}  rank = {rank}  feasible = {}",
        d.len(),
        uqsd_feasible(d, DEFAULT_RANK_TOL)
    );
    Ok(())
}

fn main() -> npath_duality::Result<()> {
    for n in 4..=6 {
        show(
            &format!("degenerate set, n = {n}"),
            &degenerate_detectors(n)?,
        )?;
    }
    show("figure-1 set, θ = π/6", figure1(FRAC_PI_6)?.detectors())?;
    show("figure-1 set, θ = π/4", figure1(FRAC_PI_4)?.detectors())?;
    Ok(())
}
