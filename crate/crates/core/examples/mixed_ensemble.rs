//! Mixed detector states obey D̄² + C² ≤ 1, with D̄ built from the weighted mean of D_Q.

use std::f64::consts::FRAC_PI_8;

use npath_duality::duality::DEFAULT_DUALITY_TOL;
use npath_duality::scenarios::{figure1, random_ensemble, seeded_rng};
use npath_duality::{check_mixed_duality, Ensemble};

fn main() -> npath_duality::Result<()> {
    // Opposite rotations: the coherences partly cancel in the mixture.
    let mix = Ensemble::new(vec![
        (0.5, figure1(FRAC_PI_8)?),
        (0.5, figure1(-FRAC_PI_8)?),
    ])?;
    let v = check_mixed_duality(&mix, DEFAULT_DUALITY_TOL)?;
    println!(
        "figure-1 ±π/8 mixture: sum = {:.6} (strictly below 1: {})",
        v.sum, !v.saturated
    );

    let mut rng = seeded_rng(2024);
    let mut worst = 0.0_f64;
    for k in 0..500 {
        let e = random_ensemble(&mut rng, 2 + k % 4, 1..=6, 2 + k % 4);
        worst = worst.max(check_mixed_duality(&e, DEFAULT_DUALITY_TOL)?.sum);
    }
    println!("500 random ensembles: largest sum = {worst:.12}");
    Ok(())
}
