//! Property tests for the invariants of each module.

mod common;

use std::f64::consts::TAU;

use npath_duality::duality::{check_dq_identity, check_mixed_duality, check_pure_duality};
use npath_duality::linalg::{hermitian_eigenvalues, DEFAULT_RANK_TOL};
use npath_duality::measures::{
    bagan_db_bound, coherence, distinguishability_d, distinguishability_dq,
    distinguishability_from_overlap, weighted_overlap, weighted_overlap_from_parts,
};
use npath_duality::pattern::{intensity, visibility, PhaseScan};
use npath_duality::{
    gram, inner, numerical_rank, partial_trace, reduce_ensemble, DetectorSet, Ensemble,
    PathAmplitudes, PureJointState, QuantonDensityMatrix,
};
use num_complex::Complex64;
use proptest::prelude::*;

use common::{apply, random_mix, random_pure, random_unitary};

fn with_phases(s: &PureJointState, amp_phases: &[f64], det_phases: &[f64]) -> PureJointState {
    let c = s
        .amplitudes()
        .as_slice()
        .iter()
        .zip(amp_phases)
        .map(|(z, &a)| z * Complex64::from_polar(1.0, a))
        .collect();
    let d = s
        .detectors()
        .vectors()
        .iter()
        .zip(det_phases)
        .map(|(v, &a)| v.scaled(Complex64::from_polar(1.0, a)))
        .collect();
    PureJointState::new(
        PathAmplitudes::normalized(c).unwrap(),
        DetectorSet::normalized(d).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inner_is_conjugate_symmetric(seed in any::<u64>(), dim in 1usize..8) {
        let s = random_pure(seed, 2, dim);
        let (u, v) = (&s.detectors().vectors()[0], &s.detectors().vectors()[1]);
        let a = inner(u, v).unwrap();
        let b = inner(v, u).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-15);
        prop_assert!(a.norm() <= u.norm() * v.norm() + 1e-15);
    }

    #[test]
    fn gram_is_exactly_hermitian(seed in any::<u64>(), n in 2usize..7, m in 1usize..6) {
        let g = random_pure(seed, n, m).detectors().gram();
        prop_assert_eq!(g.hermiticity_defect(), 0.0);
        for i in 0..n {
            prop_assert_eq!(g[(i, i)].im, 0.0);
        }
    }

    #[test]
    fn rank_invariant_under_unitary(seed in any::<u64>(), n in 2usize..7, m in 1usize..6) {
        let d = random_pure(seed, n, m).detectors().clone();
        let u = random_unitary(seed ^ 0x5eed, m);
        let rotated: Vec<_> = d.vectors().iter().map(|v| apply(&u, v)).collect();
        let before = numerical_rank(&d.gram(), DEFAULT_RANK_TOL).unwrap();
        let after = numerical_rank(&gram(&rotated).unwrap(), DEFAULT_RANK_TOL).unwrap();
        prop_assert_eq!(before, after);
        prop_assert_eq!(before, n.min(m));
        let g2 = gram(&rotated).unwrap();
        let e1 = hermitian_eigenvalues(&d.gram()).unwrap();
        let e2 = hermitian_eigenvalues(&g2).unwrap();
        for (a, b) in e1.iter().zip(&e2) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn reduced_diagonal_is_probabilities(seed in any::<u64>(), n in 2usize..7, m in 1usize..6) {
        let s = random_pure(seed, n, m);
        let rho = partial_trace(&s);
        for (i, p) in s.amplitudes().probabilities().iter().enumerate() {
            prop_assert_eq!(rho.get(i, i).re, *p);
            prop_assert_eq!(rho.get(i, i).im, 0.0);
        }
        prop_assert!(QuantonDensityMatrix::new(rho.matrix().clone()).is_ok());
    }

    #[test]
    fn reduced_moduli_phase_invariant(
        seed in any::<u64>(), n in 2usize..6, m in 1usize..5, k in 0usize..6, phase in 0.0..TAU
    ) {
        let s = random_pure(seed, n, m);
        let k = k % n;
        let mut amp_phases = vec![0.0; n];
        let mut det_phases = vec![0.0; n];
        amp_phases[k] = -phase;
        det_phases[k] = phase;
        let t = with_phases(&s, &amp_phases, &det_phases);
        let (r1, r2) = (partial_trace(&s), partial_trace(&t));
        for i in 0..n {
            for j in 0..n {
                prop_assert!((r1.get(i, j).norm() - r2.get(i, j).norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn measures_phase_invariant(
        seed in any::<u64>(), n in 2usize..6, m in 1usize..5,
        phases in proptest::collection::vec(0.0..TAU, 12)
    ) {
        let s = random_pure(seed, n, m);
        let t = with_phases(&s, &phases[..n], &phases[6..6 + n]);
        let c = |x: &PureJointState| coherence(&partial_trace(x)).unwrap();
        prop_assert!((c(&s) - c(&t)).abs() < 1e-12);
        prop_assert!((distinguishability_d(&s) - distinguishability_d(&t)).abs() < 1e-12);
        prop_assert!((distinguishability_dq(&s) - distinguishability_dq(&t)).abs() < 1e-12);
    }

    #[test]
    fn measure_identities(seed in any::<u64>(), n in 2usize..7, m in 1usize..7) {
        let s = random_pure(seed, n, m);
        let sw = weighted_overlap(&s);
        let d = distinguishability_d(&s);
        let dq = distinguishability_dq(&s);
        prop_assert!((d * d + sw * sw - 1.0).abs() < 1e-12);
        prop_assert!((d * d - dq * (2.0 - dq)).abs() < 1e-12);
        prop_assert!(check_dq_identity(&s, 1e-12));
        prop_assert!((coherence(&partial_trace(&s)).unwrap() - sw).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&dq));
        let v = check_pure_duality(&s, 1e-12).unwrap();
        prop_assert!(v.saturated);
    }

    #[test]
    fn bagan_bound_never_exceeds_one(seed in any::<u64>(), n in 2usize..7, m in 1usize..7) {
        let s = random_pure(seed, n, m);
        let b = bagan_db_bound(&s.amplitudes().probabilities(), &s.detectors().gram()).unwrap();
        prop_assert!(b >= 0.0);
        prop_assert!(b <= 1.0 + 1e-12);
    }

    #[test]
    fn d_non_increasing_in_each_overlap(
        seed in any::<u64>(), n in 2usize..6, a in 0usize..6, b in 0usize..6, bump in 0.0..0.5f64
    ) {
        let s = random_pure(seed, n, n);
        let g = s.detectors().gram();
        let moduli: Vec<f64> = s.amplitudes().as_slice().iter().map(|z| z.norm()).collect();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let base = |i: usize, j: usize| g[(i, j)].norm();
        let raised = |i: usize, j: usize| {
            let v = g[(i, j)].norm();
            if (i, j) == (a.min(b), a.max(b)) { (v + bump).min(1.0) } else { v }
        };
        let d0 = distinguishability_from_overlap(weighted_overlap_from_parts(&moduli, base, n));
        let d1 = distinguishability_from_overlap(weighted_overlap_from_parts(&moduli, raised, n));
        prop_assert!(d1 <= d0 + 1e-15);
    }

    #[test]
    fn mixed_duality_bounded(seed in any::<u64>(), n in 2usize..6, k in 2usize..6) {
        let e = random_mix(seed, n, k);
        let v = check_mixed_duality(&e, 1e-12).unwrap();
        prop_assert!(v.within_bound, "sum = {}", v.sum);
        let rho = reduce_ensemble(&e);
        prop_assert!(QuantonDensityMatrix::new(rho.matrix().clone()).is_ok());
    }

    #[test]
    fn ensemble_of_one_is_pure(seed in any::<u64>(), n in 2usize..6, m in 1usize..6) {
        let s = random_pure(seed, n, m);
        prop_assert_eq!(reduce_ensemble(&Ensemble::pure(s.clone())), partial_trace(&s));
    }

    #[test]
    fn intensity_nonnegative_and_shift_invariant(
        seed in any::<u64>(), n in 2usize..6, m in 1usize..5,
        phases in proptest::collection::vec(-10.0..10.0f64, 6), shift in -10.0..10.0f64
    ) {
        let rho = reduce_ensemble(&random_mix(seed, n, 3));
        let phi = &phases[..n];
        let shifted: Vec<f64> = phi.iter().map(|p| p + shift).collect();
        let i0 = intensity(&rho, phi).unwrap();
        prop_assert!(i0 >= -1e-10);
        prop_assert!((i0 - intensity(&rho, &shifted).unwrap()).abs() < 1e-12);
        let _ = m;
    }

    #[test]
    fn two_path_visibility_is_coherence(seed in any::<u64>(), m in 1usize..5, points in 64usize..400) {
        let s = random_pure(seed, 2, m);
        let s = PureJointState::new(PathAmplitudes::uniform(2).unwrap(), s.detectors().clone()).unwrap();
        let rho = partial_trace(&s);
        let v = visibility(&PhaseScan::relative_phase(&rho, points).unwrap()).unwrap();
        let bound = 2.0 * (TAU / points as f64).powi(2);
        prop_assert!((v - coherence(&rho).unwrap()).abs() <= bound);
    }
}
