//! Scans the relative phase of a two-path state and compares the fringe
//! visibility with the coherence.

use npath_duality::measures::{coherence, englert_d};
use npath_duality::pattern::{visibility, PhaseScan};
use npath_duality::scenarios::{random_unit_vector, seeded_rng};
use npath_duality::{partial_trace, DetectorSet, PathAmplitudes, PureJointState};

fn main() -> npath_duality::Result<()> {
    let mut rng = seeded_rng(11);
    for _ in 0..5 {
        let dets = DetectorSet::new(vec![
            random_unit_vector(&mut rng, 3),
            random_unit_vector(&mut rng, 3),
        ])?;
        let state = PureJointState::new(PathAmplitudes::uniform(2)?, dets)?;
        let rho = partial_trace(&state);
        let scan = PhaseScan::relative_phase(&rho, 256)?;
        let v = visibility(&scan)?;
        let c = coherence(&rho)?;
        let d = englert_d(&state)?;
        println!(
            "V = {v:.9}  C = {c:.9}  D = {d:.9}  V² + D² = {:.9}",
            v * v + d * d
        );
    }
    Ok(())
}
