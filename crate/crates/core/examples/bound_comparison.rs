//! Compares D² with the minimum-error bound on both figure families.

use npath_duality::duality::comoving_increments;
use npath_duality::scenarios::default_grid;
use npath_duality::{bagan_comparison, Family};

fn main() -> npath_duality::Result<()> {
    let grid = default_grid();
    let f1 = bagan_comparison(Family::Figure1, &grid)?;
    println!(
        "figure 1: min(D² − bound²) = {:.3e}, D² ≥ bound² everywhere: {}",
        f1.statistic, f1.claim_holds
    );

    let f2 = bagan_comparison(Family::Figure2, &grid)?;
    let inc = comoving_increments(&f2.rows);
    let up = inc.iter().filter(|(db, dc)| *db > 0.0 && *dc > 0.0).count();
    println!(
        "figure 2: {up} of {} steps in (0, π/4) raise both bound² and C²",
        inc.len()
    );
    Ok(())
}
