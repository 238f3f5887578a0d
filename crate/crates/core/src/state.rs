//! Quanton–detector joint states and the reduced quanton density matrix.
//!
//! A pure joint state is `Σ_i c_i |ψ_i⟩|d_i⟩` where the path states `|ψ_i⟩`
//! are orthonormal and the detector states `|d_i⟩` are unit vectors that need
//! not be orthogonal. Tracing out the detector leaves
//! `ρ_ij = c_i conj(c_j) ⟨d_j|d_i⟩`.
//!
//! Constructors validate normalization and never repair it silently; use the
//! `normalized` constructors to rescale raw input.

use num_complex::Complex64;

use crate::error::{DualityError, Result};
use crate::linalg::{gram, inner, is_hermitian_psd_trace1, ComplexMatrix, ComplexVector};

/// Tolerance on `Σ|c_i|² = 1`, `‖d_i‖ = 1` and `Σ w_k = 1`.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance on the Hermitian / trace / PSD checks of a density matrix.
pub const DENSITY_TOL: f64 = 1e-10;

/// Path amplitudes `c_1..c_N`, `N ≥ 2`, with `Σ|c_i|² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathAmplitudes(Vec<Complex64>);

impl PathAmplitudes {
    pub fn new(c: Vec<Complex64>) -> Result<Self> {
        check_amplitude_shape(&c)?;
        let total: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(DualityError::invariant(
                format!("amplitudes must satisfy sum |c_i|^2 = 1 (found {total:.17})"),
                None,
            ));
        }
        Ok(PathAmplitudes(c))
    }

    /// Rescales `c` to unit norm before validating.
    pub fn normalized(c: Vec<Complex64>) -> Result<Self> {
        check_amplitude_shape(&c)?;
        let total: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return Err(DualityError::invariant("amplitudes are all zero", None));
        }
        let s = 1.0 / total.sqrt();
        Self::new(c.into_iter().map(|z| z * s).collect())
    }

    /// Equal real amplitudes `1/√N`.
    pub fn uniform(n: usize) -> Result<Self> {
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Self::normalized(vec![a; n])
    }

    /// Real nonnegative amplitudes `√p_i` for a probability vector.
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        if let Some(i) = p.iter().position(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(DualityError::invariant(
                "probabilities must be finite and >= 0",
                Some(i),
            ));
        }
        Self::new(p.iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    /// `p_i = |c_i|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.norm_sqr()).collect()
    }
}

fn check_amplitude_shape(c: &[Complex64]) -> Result<()> {
    if c.len() < 2 {
        return Err(DualityError::invariant(
            format!("need at least 2 paths (found {})", c.len()),
            None,
        ));
    }
    if let Some(index) = c.iter().position(|z| !z.is_finite()) {
        return Err(DualityError::NonFinite { index });
    }
    Ok(())
}

/// Detector states `|d_1⟩..|d_N⟩`, unit vectors in a shared space of dimension `M ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorSet(Vec<ComplexVector>);

impl DetectorSet {
    pub fn new(d: Vec<ComplexVector>) -> Result<Self> {
        check_detector_shape(&d)?;
        for (i, v) in d.iter().enumerate() {
            let n = v.norm();
            if (n - 1.0).abs() > NORM_TOL {
                return Err(DualityError::invariant(
                    format!("detector state must have unit norm (found {n:.17})"),
                    Some(i),
                ));
            }
        }
        Ok(DetectorSet(d))
    }

    /// Rescales every vector to unit norm before validating.
    pub fn normalized(d: Vec<ComplexVector>) -> Result<Self> {
        check_detector_shape(&d)?;
        let d = d
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.normalized().map_err(|_| {
                    DualityError::invariant("detector state is the zero vector", Some(i))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Detector-space dimension `M`.
    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.0
    }

    /// `G[i][j] = ⟨d_i|d_j⟩`.
    pub fn gram(&self) -> ComplexMatrix {
        gram(&self.0).expect("detector set has a shared dimension")
    }
}

fn check_detector_shape(d: &[ComplexVector]) -> Result<()> {
    let Some(first) = d.first() else {
        return Err(DualityError::invariant("detector set is empty", None));
    };
    if let Some(i) = d.iter().position(|v| v.dim() != first.dim()) {
        return Err(DualityError::invariant(
            format!(
                "detector states must share one dimension (expected {}, found {})",
                first.dim(),
                d[i].dim()
            ),
            Some(i),
        ));
    }
    Ok(())
}

/// The entangled state `Σ_i c_i |ψ_i⟩|d_i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureJointState {
    amps: PathAmplitudes,
    dets: DetectorSet,
}

impl PureJointState {
    pub fn new(amps: PathAmplitudes, dets: DetectorSet) -> Result<Self> {
        if amps.len() != dets.len() {
            return Err(DualityError::invariant(
                format!(
                    "number of amplitudes ({}) must equal number of detector states ({})",
                    amps.len(),
                    dets.len()
                ),
                None,
            ));
        }
        Ok(PureJointState { amps, dets })
    }

    /// Number of paths `N`.
    pub fn n(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &PathAmplitudes {
        &self.amps
    }

    pub fn detectors(&self) -> &DetectorSet {
        &self.dets
    }
}

/// Classical mixture `Σ_k w_k |Ψ_k⟩⟨Ψ_k|` of pure joint states sharing `N`.
///
/// Detector dimensions may differ between components, since only the reduced
/// `N×N` matrices are ever mixed.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    components: Vec<(f64, PureJointState)>,
}

impl Ensemble {
    pub fn new(components: Vec<(f64, PureJointState)>) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(DualityError::invariant("ensemble has no components", None));
        };
        let n = first.n();
        for (k, (w, s)) in components.iter().enumerate() {
            if !(*w > 0.0) || !w.is_finite() {
                return Err(DualityError::invariant(
                    format!("ensemble weight must be positive (found {w})"),
                    Some(k),
                ));
            }
            if s.n() != n {
                return Err(DualityError::invariant(
                    format!(
                        "ensemble components must share N (expected {n}, found {})",
                        s.n()
                    ),
                    Some(k),
                ));
            }
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(DualityError::invariant(
                format!("ensemble weights must sum to 1 (found {total:.17})"),
                None,
            ));
        }
        Ok(Ensemble { components })
    }

    /// Rescales the weights to sum to one before validating.
    pub fn normalized(components: Vec<(f64, PureJointState)>) -> Result<Self> {
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if !(total > 0.0) {
            return Err(DualityError::invariant(
                "ensemble weights sum to zero",
                None,
            ));
        }
        Self::new(
            components
                .into_iter()
                .map(|(w, s)| (w / total, s))
                .collect(),
        )
    }

    pub fn pure(state: PureJointState) -> Self {
        Ensemble {
            components: vec![(1.0, state)],
        }
    }

    pub fn n(&self) -> usize {
        self.components[0].1.n()
    }

    pub fn components(&self) -> &[(f64, PureJointState)] {
        &self.components
    }
}

/// Reduced quanton state in the path basis: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantonDensityMatrix(ComplexMatrix);

impl QuantonDensityMatrix {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if !rho.is_square() {
            return Err(DualityError::NotSquare {
                rows: rho.rows(),
                cols: rho.cols(),
            });
        }
        if !is_hermitian_psd_trace1(&rho, DENSITY_TOL) {
            return Err(DualityError::invariant(
                "density matrix must be Hermitian, positive semidefinite and unit-trace",
                None,
            ));
        }
        Ok(QuantonDensityMatrix(rho))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }
}

/// `ρ = Tr_d |Ψ⟩⟨Ψ|`, i.e. `ρ_ij = c_i conj(c_j) ⟨d_j|d_i⟩`.
///
/// The diagonal is set to `|c_i|²` directly and the lower triangle mirrors the
/// upper one, so the output is exactly Hermitian.
pub fn partial_trace(s: &PureJointState) -> QuantonDensityMatrix {
    let c = s.amplitudes().as_slice();
    let d = s.detectors().vectors();
    let n = s.n();
    let mut rho = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        rho[(i, i)] = Complex64::new(c[i].norm_sqr(), 0.0);
        for j in i + 1..n {
            let overlap = inner(&d[j], &d[i]).expect("shared detector dimension");
            let z = c[i] * c[j].conj() * overlap;
            rho[(i, j)] = z;
            rho[(j, i)] = z.conj();
        }
    }
    debug_assert!(is_hermitian_psd_trace1(&rho, DENSITY_TOL));
    QuantonDensityMatrix(rho)
}

/// `Σ_k w_k · partial_trace(Ψ_k)`.
pub fn reduce_ensemble(e: &Ensemble) -> QuantonDensityMatrix {
    let n = e.n();
    let rho = e
        .components()
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, (w, s)| {
            acc.add_scaled(partial_trace(s).matrix(), *w)
                .expect("components share N")
        });
    debug_assert!(is_hermitian_psd_trace1(&rho, DENSITY_TOL));
    QuantonDensityMatrix(rho)
}
