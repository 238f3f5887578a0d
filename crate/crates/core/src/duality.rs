//! Checks of the duality relation `D² + C² ≤ 1` and of the structural
//! properties of `D`.
//!
//! For an ensemble the distinguishability is taken from the given
//! decomposition: `D̄_Q = Σ_k w_k D_Q(Ψ_k)` and `D̄² = D̄_Q(2 − D̄_Q)`, while `C`
//! is the coherence of the mixed reduced state. Since `|ρ_ij|` is convex under
//! mixing, `C ≤ 1 − D̄_Q` and hence `D̄² + C² ≤ 1`. The value depends on the
//! decomposition chosen.

use rand::Rng;
use serde::Serialize;

use crate::error::{DualityError, Result};
use crate::linalg::{numerical_rank, ComplexVector};
use crate::measures::{
    coherence, distinguishability_dq, distinguishability_from_overlap, full_report,
    weighted_overlap_from_parts, MeasureReport,
};
use crate::scenarios::{
    closed_form, random_unit_vector, seeded_rng, sweep_grid, Family, ScenarioRng, SweepRow,
};
use crate::state::{reduce_ensemble, DetectorSet, Ensemble, PureJointState};

/// Default tolerance for the saturation and identity checks.
pub const DEFAULT_DUALITY_TOL: f64 = 1e-12;

/// Minimum probe count accepted by [`durr_criteria`].
pub const MIN_DURR_PROBES: usize = 100;

/// Global-minimum check threshold on `D²`. The constructed input has `S = 1`
/// up to rounding, so `D² = 1 − S²` is a few ulps rather than exactly zero.
const GLOBAL_MIN_D2_TOL: f64 = 1e-12;

/// Differences below this are treated as rounding noise by the continuity probe.
const CONTINUITY_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityVerdict {
    /// `D² + C²`.
    pub sum: f64,
    /// `|sum − 1| ≤ tolerance`.
    pub saturated: bool,
    /// `sum ≤ 1 + tolerance`.
    pub within_bound: bool,
    pub tolerance: f64,
    pub detail: MeasureReport,
}

impl DualityVerdict {
    fn new(sum: f64, tolerance: f64, detail: MeasureReport) -> Self {
        DualityVerdict {
            sum,
            saturated: (sum - 1.0).abs() <= tolerance,
            within_bound: sum <= 1.0 + tolerance,
            tolerance,
            detail,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(DualityError::Precondition(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

/// `D² + C²` for a pure state, with `C` taken from the reduced density matrix.
/// A pure state passes when the verdict is saturated.
pub fn check_pure_duality(s: &PureJointState, tol: f64) -> Result<DualityVerdict> {
    check_tol(tol)?;
    let report = full_report(s)?;
    Ok(DualityVerdict::new(report.duality_sum, tol, report))
}

/// `D̄² + C²` for an ensemble under the weight-averaged `D_Q` convention.
/// An ensemble passes when the verdict is within bound.
pub fn check_mixed_duality(e: &Ensemble, tol: f64) -> Result<DualityVerdict> {
    check_tol(tol)?;
    let c = coherence(&reduce_ensemble(e))?;
    let dq: f64 = e
        .components()
        .iter()
        .map(|(w, s)| w * distinguishability_dq(s))
        .sum();
    let d2 = (dq * (2.0 - dq)).max(0.0);
    let sum = d2 + c * c;
    let detail = MeasureReport {
        n: e.n(),
        coherence: c,
        dist_d: d2.sqrt(),
        dist_dq: dq,
        bagan_db_bound: None,
        duality_sum: sum,
    };
    Ok(DualityVerdict::new(sum, tol, detail))
}

/// `|D² − D_Q(2 − D_Q)| ≤ tol`.
pub fn check_dq_identity(s: &PureJointState, tol: f64) -> bool {
    let d = crate::measures::distinguishability_d(s);
    let dq = distinguishability_dq(s);
    (d * d - dq * (2.0 - dq)).abs() <= tol
}

/// Unambiguous discrimination of `d` is possible only if the states are
/// linearly independent, i.e. their Gram matrix has full rank.
pub fn uqsd_feasible(d: &DetectorSet, tol: f64) -> bool {
    match numerical_rank(&d.gram(), tol) {
        Ok(rank) => rank == d.len(),
        Err(_) => false,
    }
}

/// Outcome of the four-criterion probe harness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DurrReport {
    pub n: usize,
    pub continuity_ok: bool,
    pub global_max_ok: bool,
    pub global_min_ok: bool,
    pub monotonicity_ok: bool,
    pub probe_count: usize,
}

impl DurrReport {
    pub fn all_ok(&self) -> bool {
        self.continuity_ok && self.global_max_ok && self.global_min_ok && self.monotonicity_ok
    }
}

/// `D` as a function of path probabilities and a symmetric overlap-modulus table.
fn d_of(p: &[f64], overlaps: &[Vec<f64>]) -> f64 {
    let moduli: Vec<f64> = p.iter().map(|x| x.sqrt()).collect();
    distinguishability_from_overlap(weighted_overlap_from_parts(
        &moduli,
        |i, j| overlaps[i][j],
        p.len(),
    ))
}

/// Random probability vector with every entry at least `floor`.
fn random_simplex_point(rng: &mut ScenarioRng, n: usize, floor: f64) -> Vec<f64> {
    let u: Vec<f64> = (0..n).map(|_| 1.0 - rng.random::<f64>()).collect();
    let total: f64 = u.iter().sum();
    let free = 1.0 - floor * n as f64;
    u.iter().map(|x| floor + free * x / total).collect()
}

fn overlap_table(vectors: &[ComplexVector]) -> Vec<Vec<f64>> {
    vectors
        .iter()
        .map(|a| {
            vectors
                .iter()
                .map(|b| {
                    crate::linalg::inner(a, b)
                        .map(|z| z.norm())
                        .unwrap_or(f64::NAN)
                })
                .collect()
        })
        .collect()
}

fn constant_table(n: usize, g: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { g }).collect())
        .collect()
}

/// Probes the four basic criteria for a path quantifier:
///
/// 1. continuity in the probabilities, via finite differences with step
///    shrinking by ×10 from 1e−3 to 1e−7: every shrink must cut the central
///    difference by at least ×5 (linear scaling within a factor 2) unless it is
///    already at the rounding floor, and the one-sided change at the smallest
///    step must be below 1e−5;
/// 2. `D = 1` for a certain path with orthogonal detectors, and no probe exceeds it;
/// 3. `D = 0` for equal probabilities with parallel detectors, and no probe goes below it;
/// 4. strict decrease of `D` when moving two probabilities toward each other
///    (with all overlaps equal to a common `g`) and when raising one overlap
///    with the probabilities held fixed.
pub fn durr_criteria(n: usize, probes: usize, seed: u64) -> Result<DurrReport> {
    if n < 2 {
        return Err(DualityError::Precondition(format!(
            "n must be >= 2, got {n}"
        )));
    }
    if probes < MIN_DURR_PROBES {
        return Err(DualityError::Precondition(format!(
            "need at least {MIN_DURR_PROBES} probes, got {probes}"
        )));
    }
    let mut rng = seeded_rng(seed);

    let identity = constant_table(n, 0.0);
    let parallel = constant_table(n, 1.0);
    let global_max = (0..n).all(|k| {
        let mut p = vec![0.0; n];
        p[k] = 1.0;
        d_of(&p, &identity) == 1.0
    });
    let d_min = d_of(&vec![1.0 / n as f64; n], &parallel);
    let global_min_exact = d_min * d_min <= GLOBAL_MIN_D2_TOL;

    let mut continuity_ok = true;
    let mut bounded_above = true;
    let mut bounded_below = true;
    let mut monotonicity_ok = true;

    for _ in 0..probes {
        // (1) continuity at an interior point with realizable overlaps.
        let p = random_simplex_point(&mut rng, n, 0.2 / n as f64);
        let overlaps = loop {
            let dets: Vec<ComplexVector> =
                (0..n).map(|_| random_unit_vector(&mut rng, n)).collect();
            let t = overlap_table(&dets);
            let worst = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .fold(0.0_f64, |acc, (i, j)| acc.max(t[i][j]));
            if worst < 0.95 {
                break t;
            }
        };
        let mut dir: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let mean = dir.iter().sum::<f64>() / n as f64;
        dir.iter_mut().for_each(|x| *x -= mean);
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        dir.iter_mut().for_each(|x| *x /= norm);

        let base = d_of(&p, &overlaps);
        bounded_above &= base <= 1.0;
        bounded_below &= base >= d_min;
        let mut previous: Option<f64> = None;
        for k in 3..=7 {
            let delta = 10f64.powi(-k);
            let shifted = |sign: f64| -> f64 {
                let q: Vec<f64> = p
                    .iter()
                    .zip(&dir)
                    .map(|(a, b)| a + sign * delta * b)
                    .collect();
                d_of(&q, &overlaps)
            };
            let (forward, backward) = (shifted(1.0), shifted(-1.0));
            // The odd part isolates the linear term, so no cancellation against
            // the quadratic one.
            let central = 0.5 * (forward - backward).abs();
            if let Some(prev) = previous {
                if !(central <= CONTINUITY_FLOOR || central <= 0.2 * prev) {
                    continuity_ok = false;
                }
            }
            previous = Some(central);
            if k == 7 {
                let one_sided = (forward - base).abs().max((backward - base).abs());
                continuity_ok &= one_sided <= 1e-5;
            }
        }

        // (4a) equalizing a pair under uniform overlap g.
        let g = 0.05 + 0.95 * (1.0 - rng.random::<f64>());
        let table = constant_table(n, g);
        let (mut q, hi, lo) = loop {
            let q = random_simplex_point(&mut rng, n, 0.0);
            let a = rng.random_range(0..n);
            let b = (a + 1 + rng.random_range(0..n - 1)) % n;
            let (hi, lo) = if q[a] >= q[b] { (a, b) } else { (b, a) };
            if q[hi] - q[lo] > 1e-3 {
                break (q, hi, lo);
            }
        };
        let before = d_of(&q, &table);
        let eps = (0.05 + 0.95 * rng.random::<f64>()) * 0.5 * (q[hi] - q[lo]);
        q[hi] -= eps;
        q[lo] += eps;
        let after = d_of(&q, &table);
        monotonicity_ok &= after < before;

        // (4b) raising one overlap with probabilities fixed.
        let p = random_simplex_point(&mut rng, n, 0.2 / n as f64);
        let mut table: Vec<Vec<f64>> = constant_table(n, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.9 * rng.random::<f64>();
                table[i][j] = v;
                table[j][i] = v;
            }
        }
        let a = rng.random_range(0..n);
        let b = (a + 1 + rng.random_range(0..n - 1)) % n;
        let before = d_of(&p, &table);
        let raised = table[a][b] + 0.01 + 0.09 * rng.random::<f64>();
        table[a][b] = raised;
        table[b][a] = raised;
        let after = d_of(&p, &table);
        monotonicity_ok &= after < before;
    }

    Ok(DurrReport {
        n,
        continuity_ok,
        global_max_ok: global_max && bounded_above,
        global_min_ok: global_min_exact && bounded_below,
        monotonicity_ok,
        probe_count: probes,
    })
}

/// Figure-family sweep together with the comparison claim for that family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaganComparison {
    pub family: Family,
    pub rows: Vec<SweepRow>,
    /// figure1: `min(D² − bound²)` over the grid.
    /// figure2: number of steps inside `(0, π/4)` that were compared.
    pub statistic: f64,
    /// figure1: `D² ≥ bound²` everywhere (to 1e−12).
    /// figure2: `bound²` and `C²` change with the same sign on every step inside `(0, π/4)`.
    pub claim_holds: bool,
}

/// Increments `(Δbound², ΔC²)` over consecutive grid points strictly inside `(0, π/4)`.
pub fn comoving_increments(rows: &[SweepRow]) -> Vec<(f64, f64)> {
    let quarter = std::f64::consts::FRAC_PI_4;
    rows.windows(2)
        .filter(|w| w[0].theta > 0.0 && w[1].theta < quarter)
        .map(|w| (w[1].db2_bound - w[0].db2_bound, w[1].c2 - w[0].c2))
        .collect()
}

pub fn bagan_comparison(family: Family, theta_grid: &[f64]) -> Result<BaganComparison> {
    // Rejects non-figure families.
    closed_form(family, 0.0)?;
    let rows = sweep_grid(family, theta_grid)?;
    let (statistic, claim_holds) = match family {
        Family::Figure1 => {
            let min_gap = rows
                .iter()
                .map(|r| r.d2 - r.db2_bound)
                .fold(f64::INFINITY, f64::min);
            (min_gap, min_gap >= -DEFAULT_DUALITY_TOL)
        }
        _ => {
            let inc = comoving_increments(&rows);
            let ok = inc.iter().all(|(db, dc)| db * dc > 0.0);
            (inc.len() as f64, ok)
        }
    };
    Ok(BaganComparison {
        family,
        rows,
        statistic,
        claim_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_RANK_TOL;
    use crate::scenarios::{self, default_grid};
    use crate::state::PathAmplitudes;
    use std::f64::consts::PI;

    fn orthogonal(n: usize) -> PureJointState {
        PureJointState::new(
            PathAmplitudes::uniform(n).unwrap(),
            DetectorSet::new((0..n).map(|k| ComplexVector::basis(n, k)).collect()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn pure_duality_on_figure1_grid() {
        for t in default_grid() {
            let v =
                check_pure_duality(&scenarios::figure1(t).unwrap(), DEFAULT_DUALITY_TOL).unwrap();
            assert!(v.saturated, "theta = {t}: sum = {}", v.sum);
        }
    }

    #[test]
    fn orthogonal_detectors_saturate() {
        let v = check_pure_duality(&orthogonal(3), DEFAULT_DUALITY_TOL).unwrap();
        assert_eq!(v.sum, 1.0);
        assert_eq!((v.detail.dist_d, v.detail.coherence), (1.0, 0.0));
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(check_pure_duality(&orthogonal(2), 0.0).is_err());
        assert!(check_mixed_duality(&Ensemble::pure(orthogonal(2)), -1.0).is_err());
    }

    #[test]
    fn mixed_single_component_reduces_to_pure() {
        let s = scenarios::figure1(0.3).unwrap();
        let v = check_mixed_duality(&Ensemble::pure(s), DEFAULT_DUALITY_TOL).unwrap();
        assert!(v.saturated && v.within_bound);
        assert!(v.detail.bagan_db_bound.is_none());
    }

    #[test]
    fn mixed_orthogonal_components() {
        let e = Ensemble::new(vec![(0.3, orthogonal(3)), (0.7, orthogonal(3))]).unwrap();
        let v = check_mixed_duality(&e, DEFAULT_DUALITY_TOL).unwrap();
        assert_eq!(v.detail.coherence, 0.0);
        assert_eq!(v.detail.dist_dq, 1.0);
        assert_eq!(v.sum, 1.0);
    }

    #[test]
    fn mixed_figure1_zero_and_quarter_pi() {
        // Both components have real positive ρ_12, so the mix sits on the bound:
        // C = 1/6, D̄_Q = 5/6, D̄² = 35/36, sum = 1.
        let e = Ensemble::new(vec![
            (0.5, scenarios::figure1(0.0).unwrap()),
            (0.5, scenarios::figure1(PI / 4.0).unwrap()),
        ])
        .unwrap();
        let v = check_mixed_duality(&e, DEFAULT_DUALITY_TOL).unwrap();
        assert!((v.detail.coherence - 1.0 / 6.0).abs() < 1e-15);
        assert!((v.detail.dist_dq - 5.0 / 6.0).abs() < 1e-15);
        assert!(v.within_bound);
        assert!((v.sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mixed_opposite_phases_is_strict() {
        // figure1(±θ) have ρ_12 = ±sin(2θ)/3, which cancel in the mix.
        let t = PI / 8.0;
        let e = Ensemble::new(vec![
            (0.5, scenarios::figure1(t).unwrap()),
            (0.5, scenarios::figure1(-t).unwrap()),
        ])
        .unwrap();
        let v = check_mixed_duality(&e, DEFAULT_DUALITY_TOL).unwrap();
        assert!(v.detail.coherence.abs() < 1e-16);
        let dq = 1.0 - (2.0 * t).sin() / 3.0;
        assert!((v.sum - dq * (2.0 - dq)).abs() < 1e-15);
        assert!(v.sum < 1.0 - 1e-9);
        assert!(!v.saturated);
    }

    #[test]
    fn dq_identity_examples() {
        assert!(check_dq_identity(&orthogonal(4), DEFAULT_DUALITY_TOL));
        assert!(check_dq_identity(
            &scenarios::figure2(PI / 8.0).unwrap(),
            DEFAULT_DUALITY_TOL
        ));
    }

    #[test]
    fn uqsd_examples() {
        assert!(uqsd_feasible(orthogonal(3).detectors(), DEFAULT_RANK_TOL));
        assert!(!uqsd_feasible(
            &scenarios::degenerate_detectors(4).unwrap(),
            DEFAULT_RANK_TOL
        ));
        assert!(uqsd_feasible(
            scenarios::figure2(PI / 6.0).unwrap().detectors(),
            DEFAULT_RANK_TOL
        ));
    }

    #[test]
    fn durr_preconditions() {
        assert!(durr_criteria(1, 1000, 0).is_err());
        assert!(durr_criteria(3, 0, 0).is_err());
        assert!(durr_criteria(3, 99, 0).is_err());
    }

    #[test]
    fn durr_three_paths() {
        let r = durr_criteria(3, 1000, 42).unwrap();
        assert!(r.all_ok(), "{r:?}");
        assert_eq!(r.probe_count, 1000);
        assert_eq!(r, durr_criteria(3, 1000, 42).unwrap());
    }

    #[test]
    fn englert_form_strictly_decreasing_in_overlap() {
        let p = [0.5, 0.5];
        let mut last = f64::INFINITY;
        for k in 0..=100 {
            let g = k as f64 / 100.0;
            let d = d_of(&p, &constant_table(2, g));
            assert!((d - (1.0 - g * g).sqrt()).abs() < 1e-14);
            assert!(d < last);
            last = d;
        }
    }

    #[test]
    fn certain_path_orthogonal_detectors_is_maximal() {
        assert_eq!(d_of(&[1.0, 0.0, 0.0], &constant_table(3, 0.0)), 1.0);
    }

    #[test]
    fn bagan_comparison_claims() {
        let f1 = bagan_comparison(Family::Figure1, &default_grid()).unwrap();
        assert!(f1.claim_holds);
        assert!(f1.statistic.abs() < 1e-15);
        let f2 = bagan_comparison(Family::Figure2, &default_grid()).unwrap();
        assert!(f2.claim_holds);
        assert_eq!(f2.statistic, 43.0);
        assert!(bagan_comparison(Family::Random, &default_grid()).is_err());
    }

    #[test]
    fn bagan_comparison_quoted_rows() {
        let grid = [0.0, PI / 4.0];
        let f1 = bagan_comparison(Family::Figure1, &grid).unwrap();
        let (r0, r1) = (f1.rows[0], f1.rows[1]);
        assert!((r0.d2 - 1.0).abs() < 1e-15 && (r0.db2_bound - 1.0).abs() < 1e-15);
        assert_eq!(r0.c2, 0.0);
        assert!((r1.d2 - 8.0 / 9.0).abs() < 1e-15 && (r1.db2_bound - 4.0 / 9.0).abs() < 1e-15);
        let f2 = bagan_comparison(Family::Figure2, &grid).unwrap();
        assert!((f2.rows[1].c2 - 16.0 / 81.0).abs() < 1e-15);
        assert!((f2.rows[1].d2 - 65.0 / 81.0).abs() < 1e-15);
    }
}
