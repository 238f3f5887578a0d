//! Builds a custom three-path state and reports every quantifier.

use npath_duality::duality::{check_dq_identity, check_pure_duality, DEFAULT_DUALITY_TOL};
use npath_duality::{full_report, ComplexVector, DetectorSet, PathAmplitudes, PureJointState};
use num_complex::Complex64;

fn main() -> npath_duality::Result<()> {
    let amps = PathAmplitudes::from_probabilities(&[0.5, 0.3, 0.2])?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let dets = DetectorSet::new(vec![
        ComplexVector::from_real(&[1.0, 0.0])?,
        ComplexVector::from_real(&[s, s])?,
        ComplexVector::new(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)])?,
    ])?;
    let state = PureJointState::new(amps, dets)?;

    let report = full_report(&state)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );

    let verdict = check_pure_duality(&state, DEFAULT_DUALITY_TOL)?;
    println!(
        "D² + C² = {:.15}, saturated: {}",
        verdict.sum, verdict.saturated
    );
    println!(
        "D² = D_Q(2 − D_Q): {}",
        check_dq_identity(&state, DEFAULT_DUALITY_TOL)
    );
    Ok(())
}
