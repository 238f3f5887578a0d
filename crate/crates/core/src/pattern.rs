//! Interference readout from a reduced density matrix.
//!
//! If path `i` picks up phase `φ_i` before the paths are recombined, the
//! recorded intensity is `I(φ) = Σ_ij ρ_ij e^{i(φ_i − φ_j)}`. Scanning the
//! relative phase of a two-path state gives `I = 1 + 2|ρ_12| cos(φ − arg ρ_12)`,
//! whose visibility is `2|ρ_12|`, the coherence. For `N > 2` the visibility
//! of a scan is only a diagnostic.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{DualityError, Result};
use crate::state::QuantonDensityMatrix;

/// Minimum number of samples accepted by [`visibility`].
pub const MIN_SCAN_POINTS: usize = 64;

const IMAG_RESIDUE_TOL: f64 = 1e-12;

/// Sampled intensities over a phase grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseScan {
    phases: Vec<f64>,
    intensities: Vec<f64>,
}

impl PhaseScan {
    pub fn new(phases: Vec<f64>, intensities: Vec<f64>) -> Result<Self> {
        if phases.len() != intensities.len() {
            return Err(DualityError::DimensionMismatch {
                expected: phases.len(),
                found: intensities.len(),
            });
        }
        if let Some(index) = phases
            .iter()
            .chain(&intensities)
            .position(|x| !x.is_finite())
        {
            return Err(DualityError::NonFinite { index });
        }
        Ok(PhaseScan {
            phases,
            intensities,
        })
    }

    /// Scans the relative phase of the last path over `points` uniform samples
    /// of `[0, 2π)`; every other path stays at phase zero.
    pub fn relative_phase(rho: &QuantonDensityMatrix, points: usize) -> Result<Self> {
        let n = rho.n();
        Self::with_phase_map(rho, points, |phi| {
            let mut v = vec![0.0; n];
            v[n - 1] = phi;
            v
        })
    }

    /// Scans `φ` over `points` uniform samples of `[0, 2π)`, evaluating the
    /// intensity at the phase vector `phase_map(φ)`.
    pub fn with_phase_map(
        rho: &QuantonDensityMatrix,
        points: usize,
        phase_map: impl Fn(f64) -> Vec<f64>,
    ) -> Result<Self> {
        let phases: Vec<f64> = (0..points)
            .map(|k| TAU * k as f64 / points as f64)
            .collect();
        let intensities = phases
            .iter()
            .map(|&phi| intensity(rho, &phase_map(phi)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(phases, intensities)
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }
}

/// `Re Σ_ij ρ_ij e^{i(φ_i − φ_j)}`.
pub fn intensity(rho: &QuantonDensityMatrix, phi: &[f64]) -> Result<f64> {
    let n = rho.n();
    if phi.len() != n {
        return Err(DualityError::DimensionMismatch {
            expected: n,
            found: phi.len(),
        });
    }
    let phases: Vec<Complex64> = phi.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            total += rho.get(i, j) * phases[i] * phases[j].conj();
        }
    }
    debug_assert!(total.im.abs() <= IMAG_RESIDUE_TOL);
    Ok(total.re)
}

/// `(I_max − I_min)/(I_max + I_min)` of a scan covering one full period.
///
/// The scan must hold at least [`MIN_SCAN_POINTS`] samples, sorted by phase,
/// and span `2π`, counting the spacing that wraps the last sample back to the
/// first. Each extremum is taken from the grid and then refined with the
/// vertex of the parabola through the extremal sample and its two periodic
/// neighbours, which removes the `O(h²)` grid bias for smooth fringes.
pub fn visibility(scan: &PhaseScan) -> Result<f64> {
    let n = scan.len();
    if n < MIN_SCAN_POINTS {
        return Err(DualityError::Precondition(format!(
            "visibility needs at least {MIN_SCAN_POINTS} scan points, got {n}"
        )));
    }
    let phases = scan.phases();
    if phases.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(DualityError::Precondition(
            "scan phases must be strictly increasing".into(),
        ));
    }
    let mut values = scan.intensities();
    let mut span = phases[n - 1] - phases[0];
    // A closed grid that repeats its first phase one period later.
    if (span - TAU).abs() <= 1e-9 {
        values = &values[..n - 1];
    } else {
        span += span / (n - 1) as f64;
    }
    if span < TAU - 1e-9 || span > TAU + 1e-9 {
        return Err(DualityError::Precondition(format!(
            "scan must cover exactly one period of 2π, covers {span}"
        )));
    }
    if values.iter().all(|&x| x == 0.0) {
        return Err(DualityError::UndefinedVisibility);
    }
    let imax = refined_extremum(values, true);
    let imin = refined_extremum(values, false).max(0.0);
    if imax + imin <= 0.0 {
        return Err(DualityError::UndefinedVisibility);
    }
    Ok(((imax - imin) / (imax + imin)).clamp(0.0, 1.0))
}

fn refined_extremum(values: &[f64], maximum: bool) -> f64 {
    let n = values.len();
    let better = |a: f64, b: f64| if maximum { a > b } else { a < b };
    let k = (0..n).fold(0, |best, i| {
        if better(values[i], values[best]) {
            i
        } else {
            best
        }
    });
    let (ym, y0, yp) = (values[(k + n - 1) % n], values[k], values[(k + 1) % n]);
    let curvature = ym - 2.0 * y0 + yp;
    let candidate = if curvature != 0.0 {
        y0 - (yp - ym).powi(2) / (8.0 * curvature)
    } else {
        y0
    };
    // Keep the raw sample unless the vertex is a genuine refinement of it.
    if better(candidate, y0) || candidate == y0 {
        candidate
    } else {
        y0
    }
}
