//! Built-in configurations and θ sweeps.
//!
//! Both figure families use three paths with `p_i = 1/3` and a detector space
//! spanned by the orthonormal triple `(|+⟩, |−⟩, |0⟩)`:
//!
//! | family  | `d_1`          | `d_2`          | `d_3`              |
//! |---------|----------------|----------------|--------------------|
//! | figure1 | `(cosθ, sinθ, 0)` | `(sinθ, cosθ, 0)`  | `(0, 0, 1)`         |
//! | figure2 | `(cosθ, sinθ, 0)` | `(sinθ, −cosθ, 0)` | `(0, 2√2/3, 1/3)`   |
//!
//! Random states come from a ChaCha8 generator (`rand_chacha` 0.9) seeded with
//! `seed_from_u64`; each amplitude and detector component is a complex number
//! with independent standard-normal real and imaginary parts, and each vector
//! is normalized afterwards, which is uniform on the unit sphere.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{DualityError, Result};
use crate::linalg::ComplexVector;
use crate::measures::{bagan_db_bound_for, coherence, distinguishability_d};
use crate::state::{partial_trace, DetectorSet, Ensemble, PathAmplitudes, PureJointState};

/// Seeded generator used for every random scenario.
pub type ScenarioRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ScenarioRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Figure1,
    Figure2,
    Degenerate,
    Random,
    Custom,
}

impl FromStr for Family {
    type Err = DualityError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "figure1" | "1" => Ok(Family::Figure1),
            "figure2" | "2" => Ok(Family::Figure2),
            "degenerate" => Ok(Family::Degenerate),
            "random" => Ok(Family::Random),
            "custom" => Ok(Family::Custom),
            _ => Err(DualityError::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Figure1 => "figure1",
            Family::Figure2 => "figure2",
            Family::Degenerate => "degenerate",
            Family::Random => "random",
            Family::Custom => "custom",
        })
    }
}

/// Parameters for [`build`]. Only the fields relevant to `family` are read.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub family: Family,
    /// Radians; figure families only.
    pub theta: f64,
    /// Number of paths; degenerate and random families.
    pub n: usize,
    /// Detector dimension; random family.
    pub m: usize,
    pub seed: u64,
    /// The state itself, for `Family::Custom`.
    pub custom: Option<PureJointState>,
}

impl ScenarioSpec {
    pub fn figure1(theta: f64) -> Self {
        Self::with_family(Family::Figure1, theta, 3, 3, 0)
    }

    pub fn figure2(theta: f64) -> Self {
        Self::with_family(Family::Figure2, theta, 3, 3, 0)
    }

    pub fn degenerate(n: usize) -> Self {
        Self::with_family(Family::Degenerate, 0.0, n, n.saturating_sub(1), 0)
    }

    pub fn random(n: usize, m: usize, seed: u64) -> Self {
        Self::with_family(Family::Random, 0.0, n, m, seed)
    }

    pub fn custom(state: PureJointState) -> Self {
        let n = state.n();
        let m = state.detectors().dim();
        ScenarioSpec {
            custom: Some(state),
            ..Self::with_family(Family::Custom, 0.0, n, m, 0)
        }
    }

    fn with_family(family: Family, theta: f64, n: usize, m: usize, seed: u64) -> Self {
        ScenarioSpec {
            family,
            theta,
            n,
            m,
            seed,
            custom: None,
        }
    }
}

pub fn build(spec: &ScenarioSpec) -> Result<PureJointState> {
    if !spec.theta.is_finite() {
        return Err(DualityError::Precondition(format!(
            "theta must be finite, got {}",
            spec.theta
        )));
    }
    match spec.family {
        Family::Figure1 => figure1(spec.theta),
        Family::Figure2 => figure2(spec.theta),
        Family::Degenerate => degenerate(spec.n),
        Family::Random => {
            if spec.n < 2 || spec.m < 1 {
                return Err(DualityError::Precondition(format!(
                    "random scenario needs n >= 2 and m >= 1, got n = {}, m = {}",
                    spec.n, spec.m
                )));
            }
            Ok(random_state(&mut seeded_rng(spec.seed), spec.n, spec.m))
        }
        Family::Custom => spec
            .custom
            .clone()
            .ok_or_else(|| DualityError::Precondition("custom scenario without a state".into())),
    }
}

fn uniform_three_path(detectors: [[f64; 3]; 3]) -> Result<PureJointState> {
    PureJointState::new(
        PathAmplitudes::uniform(3)?,
        DetectorSet::new(
            detectors
                .iter()
                .map(|d| ComplexVector::from_real(d))
                .collect::<Result<_>>()?,
        )?,
    )
}

pub fn figure1(theta: f64) -> Result<PureJointState> {
    let (s, c) = theta.sin_cos();
    uniform_three_path([[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
}

pub fn figure2(theta: f64) -> Result<PureJointState> {
    let (s, c) = theta.sin_cos();
    let r = 2.0 * 2f64.sqrt() / 3.0;
    uniform_three_path([[c, s, 0.0], [s, -c, 0.0], [0.0, r, 1.0 / 3.0]])
}

/// Linearly dependent detector set in dimension `n - 1`: `d_i = a_i` for
/// `i < n` and `d_n = (a_{n-2} + a_{n-1})/√2`. Equal amplitudes.
pub fn degenerate(n: usize) -> Result<PureJointState> {
    if n < 3 {
        return Err(DualityError::Precondition(format!(
            "degenerate scenario needs n >= 3, got {n}"
        )));
    }
    PureJointState::new(PathAmplitudes::uniform(n)?, degenerate_detectors(n)?)
}

pub fn degenerate_detectors(n: usize) -> Result<DetectorSet> {
    let m = n - 1;
    let mut d: Vec<ComplexVector> = (0..m).map(|k| ComplexVector::basis(m, k)).collect();
    let mut last = vec![0.0; m];
    last[m - 2] = std::f64::consts::FRAC_1_SQRT_2;
    last[m - 1] = std::f64::consts::FRAC_1_SQRT_2;
    d.push(ComplexVector::from_real(&last)?);
    DetectorSet::new(d)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Gaussian-then-normalize sample from the unit sphere in `C^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexVector {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return ComplexVector::new(v.into_iter().map(|z| z / norm).collect())
                .expect("finite by construction");
        }
    }
}

/// Draws amplitudes first, then the `n` detector vectors in order.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> PureJointState {
    let c = random_unit_vector(rng, n);
    let amps = PathAmplitudes::normalized(c.entries().to_vec()).expect("random amplitudes");
    let dets = DetectorSet::normalized((0..n).map(|_| random_unit_vector(rng, m)).collect())
        .expect("random detectors");
    PureJointState::new(amps, dets).expect("matching N")
}

/// An ensemble of `components` random pure states with shared `n`. Each
/// component draws its own detector dimension from `m_range`, and the weights
/// are uniform draws in `(0, 1]` rescaled to sum to one.
pub fn random_ensemble<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m_range: std::ops::RangeInclusive<usize>,
    components: usize,
) -> Ensemble {
    let parts: Vec<(f64, PureJointState)> = (0..components)
        .map(|_| {
            let w = 1.0 - rng.random::<f64>();
            let m = rng.random_range(m_range.clone());
            (w, random_state(rng, n, m))
        })
        .collect();
    Ensemble::normalized(parts).expect("positive weights")
}

/// One θ grid point of a figure-family sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    #[serde(rename = "D2")]
    pub d2: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    #[serde(rename = "DB2_bound")]
    pub db2_bound: f64,
    pub sum_dc: f64,
    pub sum_dbc: f64,
}

/// Closed-form `(D², C², D_B-bound²)` for a figure family.
pub fn closed_form(family: Family, theta: f64) -> Result<(f64, f64, f64)> {
    match family {
        Family::Figure1 => {
            let s2 = (2.0 * theta).sin().powi(2);
            let c2 = s2 / 9.0;
            let b = 2.0 + (1.0 - s2).max(0.0).sqrt();
            Ok((1.0 - c2, c2, b * b / 9.0))
        }
        Family::Figure2 => {
            let (s, c) = theta.sin_cos();
            let c2 = 8.0 / 81.0 * (s.abs() + c.abs()).powi(2);
            let b = 1.0 + (1.0 - 8.0 / 9.0 * s * s).sqrt() + (1.0 - 8.0 / 9.0 * c * c).sqrt();
            Ok((1.0 - c2, c2, b * b / 9.0))
        }
        other => Err(DualityError::UnknownFamily(format!(
            "{other} has no closed form"
        ))),
    }
}

/// Uniform closed grid `[start, end]` with `steps` points.
pub fn theta_grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(DualityError::Precondition(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }
    if !start.is_finite() || !end.is_finite() {
        return Err(DualityError::Precondition(
            "grid endpoints must be finite".into(),
        ));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                end
            } else {
                start + (end - start) * (k as f64 / last)
            }
        })
        .collect())
}

/// Default figure grid: `[0, π]` in 181 points.
pub fn default_grid() -> Vec<f64> {
    theta_grid(0.0, std::f64::consts::PI, 181).expect("valid default grid")
}

pub fn sweep_row(family: Family, theta: f64) -> Result<SweepRow> {
    let state = match family {
        Family::Figure1 => figure1(theta)?,
        Family::Figure2 => figure2(theta)?,
        other => {
            return Err(DualityError::UnknownFamily(format!(
                "{other} cannot be swept over theta"
            )))
        }
    };
    let c = coherence(&partial_trace(&state))?;
    let d = distinguishability_d(&state);
    let b = bagan_db_bound_for(&state)?;
    let (d2, c2, db2) = (d * d, c * c, b * b);
    Ok(SweepRow {
        theta,
        d2,
        c2,
        db2_bound: db2,
        sum_dc: d2 + c2,
        sum_dbc: db2 + c2,
    })
}

pub fn sweep_grid(family: Family, grid: &[f64]) -> Result<Vec<SweepRow>> {
    grid.iter().map(|&t| sweep_row(family, t)).collect()
}

pub fn sweep(
    family: Family,
    theta_start: f64,
    theta_end: f64,
    steps: usize,
) -> Result<Vec<SweepRow>> {
    sweep_grid(family, &theta_grid(theta_start, theta_end, steps)?)
}

/// Largest deviation of a sweep from the closed forms, over `D²`, `C²` and the bound.
pub fn closed_form_deviation(family: Family, rows: &[SweepRow]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for r in rows {
        let (d2, c2, b2) = closed_form(family, r.theta)?;
        worst = worst
            .max((r.d2 - d2).abs())
            .max((r.c2 - c2).abs())
            .max((r.db2_bound - b2).abs());
    }
    Ok(worst)
}
