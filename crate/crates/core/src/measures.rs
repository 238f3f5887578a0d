//! Wave and particle quantifiers.
//!
//! With `S = (1/(N-1)) Σ_{i≠j} |c_i c_j| |⟨d_i|d_j⟩|`:
//!
//! * path distinguishability `D = √(1 - S²)`,
//! * UQSD-based distinguishability `D_Q = 1 - S`, so that `D² = D_Q(2 - D_Q)`,
//! * coherence `C = (1/(N-1)) Σ_{i≠j} |ρ_ij|`, which equals `S` for pure states.
//!
//! The two-path distinguishability of Englert and the closed-form upper bound
//! on the minimum-error distinguishability `D_B` are provided for comparison.

use serde::Serialize;

use crate::error::{DualityError, Result};
use crate::linalg::{overlap_defect, ComplexMatrix};
use crate::state::{partial_trace, PureJointState, QuantonDensityMatrix};

/// Radicands more negative than this are errors; smaller negatives are clamped.
pub const RADICAND_TOL: f64 = 1e-12;

/// Tolerance on `|c_i|² = 1/2` for [`englert_d`].
pub const EQUAL_AMPLITUDE_TOL: f64 = 1e-9;

/// Every quantifier for one pure state. `check_mixed_duality` reuses it for ensembles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "C")]
    pub coherence: f64,
    #[serde(rename = "D")]
    pub dist_d: f64,
    #[serde(rename = "DQ")]
    pub dist_dq: f64,
    /// Upper bound on `D_B`. `None` for ensembles, where it is not defined.
    #[serde(rename = "DB_bound")]
    pub bagan_db_bound: Option<f64>,
    /// `D² + C²`.
    pub duality_sum: f64,
}

/// Normalized l1 coherence of `ρ` in the path basis.
pub fn coherence(rho: &QuantonDensityMatrix) -> Result<f64> {
    let n = rho.n();
    if n < 2 {
        return Err(DualityError::Precondition(format!(
            "coherence needs N >= 2, got {n}"
        )));
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += rho.get(i, j).norm();
            }
        }
    }
    Ok(sum / (n - 1) as f64)
}

/// `S = (1/(N-1)) Σ_{i≠j} |c_i c_j| |⟨d_i|d_j⟩|` for a pure state.
pub fn weighted_overlap(s: &PureJointState) -> f64 {
    let c = s.amplitudes().as_slice();
    let g = s.detectors().gram();
    let n = s.n();
    weighted_overlap_from_parts(
        &c.iter().map(|z| z.norm()).collect::<Vec<_>>(),
        |i, j| g[(i, j)].norm(),
        n,
    )
}

/// `S` from amplitude moduli `|c_i|` and a pairwise overlap-modulus function.
///
/// Lets callers vary individual overlaps independently of any concrete
/// detector vectors.
pub fn weighted_overlap_from_parts(
    amp_moduli: &[f64],
    overlap: impl Fn(usize, usize) -> f64,
    n: usize,
) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += amp_moduli[i] * amp_moduli[j] * overlap(i, j);
        }
    }
    2.0 * sum / (n - 1) as f64
}

/// `D = √(1 - S²)`, clamped into `[0, 1]`.
pub fn distinguishability_from_overlap(weighted_overlap: f64) -> f64 {
    (1.0 - weighted_overlap * weighted_overlap).max(0.0).sqrt()
}

/// Pairwise defects `1 - |⟨d_i|d_j⟩|²`, indexed `[i][j]`.
fn defects(s: &PureJointState) -> Vec<Vec<f64>> {
    let d = s.detectors().vectors();
    let n = d.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = overlap_defect(&d[i], &d[j]).expect("detector set is validated");
            out[i][j] = x;
            out[j][i] = x;
        }
    }
    out
}

/// `D = √(D_Q(2 - D_Q))`, equal to `√(1 - S²)` but accurate near `S = 1`.
pub fn distinguishability_d(s: &PureJointState) -> f64 {
    let q = distinguishability_dq(s);
    (q * (2.0 - q)).max(0.0).sqrt()
}

/// `D_Q = 1 - S`, evaluated as
/// `(1/(N-1)) Σ_{i≠j} [(|c_i| - |c_j|)²/2 + |c_i||c_j|(1 - |⟨d_i|d_j⟩|)]`
/// so no cancellation occurs when overlaps are close to 1.
pub fn distinguishability_dq(s: &PureJointState) -> f64 {
    let a: Vec<f64> = s.amplitudes().as_slice().iter().map(|z| z.norm()).collect();
    let delta = defects(s);
    let n = a.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let gap = delta[i][j] / (1.0 + (1.0 - delta[i][j]).sqrt());
            sum += 0.5 * (a[i] - a[j]).powi(2) + a[i] * a[j] * gap;
        }
    }
    (2.0 * sum / (n - 1) as f64).clamp(0.0, 1.0)
}

/// Englert's two-path distinguishability `√(1 - |⟨d_1|d_2⟩|²)`.
///
/// Only defined for `N = 2` with equal path probabilities.
pub fn englert_d(s: &PureJointState) -> Result<f64> {
    if s.n() != 2 {
        return Err(DualityError::Precondition(format!(
            "englert_D requires N = 2, got N = {}",
            s.n()
        )));
    }
    let p = s.amplitudes().probabilities();
    if let Some(i) = p
        .iter()
        .position(|&pi| (pi - 0.5).abs() > EQUAL_AMPLITUDE_TOL)
    {
        return Err(DualityError::Precondition(format!(
            "englert_D requires equal amplitudes |c_1| = |c_2| = 1/sqrt(2); |c_{}|^2 = {}",
            i + 1,
            p[i]
        )));
    }
    Ok(defects(s)[0][1].sqrt())
}

/// Right-hand side of the `D_B` upper bound:
/// `(1/(N-1)) Σ_{i,j} √(((p_i+p_j)/2)² - p_i p_j |G_ij|²)`.
///
/// The sum runs over all ordered pairs. Diagonal terms vanish because
/// `G_ii = 1` and are skipped; off-diagonal radicands are evaluated as
/// `((p_i - p_j)/2)² + p_i p_j (1 - |G_ij|²)`.
pub fn bagan_db_bound(p: &[f64], g: &ComplexMatrix) -> Result<f64> {
    let n = p.len();
    if n < 2 {
        return Err(DualityError::Precondition(format!("need N >= 2, got {n}")));
    }
    if g.rows() != n || g.cols() != n {
        return Err(DualityError::DimensionMismatch {
            expected: n,
            found: g.rows(),
        });
    }
    if let Some(i) = p.iter().position(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(DualityError::Precondition(format!(
            "probability p_{} = {} is not a finite nonnegative number",
            i + 1,
            p[i]
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > crate::state::NORM_TOL {
        return Err(DualityError::Precondition(format!(
            "probabilities must sum to 1, found {total}"
        )));
    }
    if let Some(i) = (0..n).position(|i| (g[(i, i)].re - 1.0).abs() > crate::state::NORM_TOL) {
        return Err(DualityError::Precondition(format!(
            "Gram diagonal entry {} is not 1",
            i + 1
        )));
    }

    bound_from_defects(p, |i, j| 1.0 - g[(i, j)].norm_sqr())
}

/// [`bagan_db_bound`] for a pure state, with `1 - |G_ij|²` taken from the
/// detector vectors directly.
pub fn bagan_db_bound_for(s: &PureJointState) -> Result<f64> {
    let delta = defects(s);
    bound_from_defects(&s.amplitudes().probabilities(), |i, j| delta[i][j])
}

fn bound_from_defects(p: &[f64], defect: impl Fn(usize, usize) -> f64) -> Result<f64> {
    let n = p.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let radicand = 0.25 * (p[i] - p[j]).powi(2) + p[i] * p[j] * defect(i, j);
            if radicand < -RADICAND_TOL {
                return Err(DualityError::NumericalDomain(format!(
                    "negative radicand {radicand} at pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            sum += radicand.max(0.0).sqrt();
        }
    }
    Ok(2.0 * sum / (n - 1) as f64)
}

pub fn full_report(s: &PureJointState) -> Result<MeasureReport> {
    let c = coherence(&partial_trace(s))?;
    let d = distinguishability_d(s);
    Ok(MeasureReport {
        n: s.n(),
        coherence: c,
        dist_d: d,
        dist_dq: distinguishability_dq(s),
        bagan_db_bound: Some(bagan_db_bound_for(s)?),
        duality_sum: d * d + c * c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexVector;
    use crate::state::{DetectorSet, PathAmplitudes};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn two_path(overlap: f64) -> PureJointState {
        let d2 = [overlap, (1.0 - overlap * overlap).sqrt()];
        PureJointState::new(
            PathAmplitudes::uniform(2).unwrap(),
            DetectorSet::new(vec![
                ComplexVector::basis(2, 0),
                ComplexVector::from_real(&d2).unwrap(),
            ])
            .unwrap(),
        )
        .unwrap()
    }

    fn three_path(detectors: [[f64; 3]; 3]) -> PureJointState {
        PureJointState::new(
            PathAmplitudes::uniform(3).unwrap(),
            DetectorSet::new(
                detectors
                    .iter()
                    .map(|d| ComplexVector::from_real(d).unwrap())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn figure1(t: f64) -> PureJointState {
        let (s, c) = t.sin_cos();
        three_path([[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    fn figure2(t: f64) -> PureJointState {
        let (s, c) = t.sin_cos();
        let r = 2.0 * 2f64.sqrt() / 3.0;
        three_path([[c, s, 0.0], [s, -c, 0.0], [0.0, r, 1.0 / 3.0]])
    }

    #[test]
    fn coherence_rejects_single_path() {
        let rho = QuantonDensityMatrix::new(ComplexMatrix::identity(1)).unwrap();
        assert!(coherence(&rho).is_err());
    }

    #[test]
    fn coherence_of_diagonal_is_zero() {
        let rho =
            QuantonDensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.2, 0.3, 0.5])).unwrap();
        assert_eq!(coherence(&rho).unwrap(), 0.0);
    }

    #[test]
    fn two_path_values() {
        let s = two_path(0.6);
        assert!((coherence(&partial_trace(&s)).unwrap() - 0.6).abs() < 1e-15);

        let s = two_path(0.8);
        assert!((distinguishability_d(&s) - 0.6).abs() < 1e-15);
        assert!((englert_d(&s).unwrap() - 0.6).abs() < 1e-15);
        let b = bagan_db_bound(&s.amplitudes().probabilities(), &s.detectors().gram()).unwrap();
        assert!((b - 0.6).abs() < 1e-15);

        assert!((distinguishability_dq(&two_path(0.5)) - 0.5).abs() < 1e-15);
        assert!((englert_d(&two_path(0.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(englert_d(&two_path(1.0)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn englert_preconditions() {
        let err = englert_d(&figure1(0.1)).unwrap_err();
        assert!(err.to_string().contains("N = 2"), "{err}");
        let s = PureJointState::new(
            PathAmplitudes::from_probabilities(&[0.7, 0.3]).unwrap(),
            DetectorSet::new(vec![ComplexVector::basis(2, 0), ComplexVector::basis(2, 1)]).unwrap(),
        )
        .unwrap();
        let err = englert_d(&s).unwrap_err();
        assert!(err.to_string().contains("equal amplitudes"), "{err}");
    }

    #[test]
    fn figure1_at_quarter_pi() {
        let s = figure1(PI / 4.0);
        let r = full_report(&s).unwrap();
        assert!((r.coherence - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.dist_d * r.dist_d - 8.0 / 9.0).abs() < 1e-15);
        assert!((r.bagan_db_bound.unwrap().powi(2) - 4.0 / 9.0).abs() < 1e-15);
        assert!((r.duality_sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn figure2_at_zero() {
        let s = figure2(0.0);
        assert!((distinguishability_dq(&s) - (1.0 - 2.0 * 2f64.sqrt() / 9.0)).abs() < 1e-15);
        assert!((distinguishability_dq(&s) - 0.685730).abs() < 1e-6);
        let b = bagan_db_bound(&s.amplitudes().probabilities(), &s.detectors().gram()).unwrap();
        assert!((b * b - 49.0 / 81.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_and_parallel_extremes() {
        let n = 4;
        let orth = PureJointState::new(
            PathAmplitudes::from_probabilities(&[0.1, 0.2, 0.3, 0.4]).unwrap(),
            DetectorSet::new((0..n).map(|k| ComplexVector::basis(n, k)).collect()).unwrap(),
        )
        .unwrap();
        let r = full_report(&orth).unwrap();
        assert_eq!(
            (r.coherence, r.dist_d, r.dist_dq, r.duality_sum),
            (0.0, 1.0, 1.0, 1.0)
        );

        let d =
            ComplexVector::new(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let par = PureJointState::new(
            PathAmplitudes::uniform(n).unwrap(),
            DetectorSet::new(vec![d; n]).unwrap(),
        )
        .unwrap();
        let r = full_report(&par).unwrap();
        assert!((r.coherence - 1.0).abs() < 1e-15);
        assert!(r.dist_d < 1e-7);
        assert!(r.dist_dq.abs() < 1e-15);
        assert!((r.duality_sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bagan_bound_uniform_orthogonal_is_one() {
        let b = bagan_db_bound(&[1.0 / 3.0; 3], &ComplexMatrix::identity(3)).unwrap();
        assert!((b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bagan_bound_domain_errors() {
        let mut g = ComplexMatrix::identity(2);
        g[(0, 1)] = Complex64::new(1.5, 0.0);
        g[(1, 0)] = Complex64::new(1.5, 0.0);
        assert!(matches!(
            bagan_db_bound(&[0.5, 0.5], &g),
            Err(DualityError::NumericalDomain(_))
        ));
        assert!(bagan_db_bound(&[0.6, 0.6], &ComplexMatrix::identity(2)).is_err());
        assert!(bagan_db_bound(&[0.5, 0.5], &ComplexMatrix::identity(3)).is_err());
        assert!(bagan_db_bound(&[0.5, 0.5], &ComplexMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn bagan_bound_clamps_tiny_negative_radicand() {
        let mut g = ComplexMatrix::identity(2);
        let over = 1.0 + 1e-14;
        g[(0, 1)] = Complex64::new(over, 0.0);
        g[(1, 0)] = Complex64::new(over, 0.0);
        assert!(bagan_db_bound(&[0.5, 0.5], &g).unwrap() >= 0.0);
    }

    #[test]
    fn report_serializes_with_short_names() {
        let v = serde_json::to_value(full_report(&figure1(0.2)).unwrap()).unwrap();
        for key in ["N", "C", "D", "DQ", "DB_bound", "duality_sum"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
