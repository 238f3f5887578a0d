//! Probes continuity, extrema and monotonicity of D for several path counts.

use npath_duality::durr_criteria;

fn main() -> npath_duality::Result<()> {
    for n in 2..=6 {
        let r = durr_criteria(n, 1000, 7)?;
        println!(
            "n = {n}: continuity {} | max {} | min {} | monotone {} | all {}",
            r.continuity_ok,
            r.global_max_ok,
            r.global_min_ok,
            r.monotonicity_ok,
            r.all_ok()
        );
    }
    Ok(())
}
