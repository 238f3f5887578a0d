//! Scenario files (JSON in) and sweep tables (CSV out).
//!
//! A scenario file looks like
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 2,
//!   "amplitudes": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
//!   "detectors": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
//!   "ensemble": [
//!     {"weight": 0.5, "amplitudes": [...], "detectors": [...]}
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. `amplitudes`/`detectors` and
//! `ensemble` are each optional, but at least one must be present.
//!
//! CSV numbers use 17 significant digits in Rust's `{:.16e}` form, which
//! round-trips every `f64`. Lines end with `\n`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::DualityError;
use crate::linalg::ComplexVector;
use crate::scenarios::SweepRow;
use crate::state::{DetectorSet, Ensemble, PathAmplitudes, PureJointState};

pub const SCENARIO_VERSION: u32 = 1;

pub const SWEEP_HEADER: &str = "theta,D2,C2,DB2_bound,sum_DC,sum_DBC";

pub const RANDOM_SWEEP_HEADER: &str = "sample,D2,C2,DQ,sum";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detectors: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<Vec<EnsembleEntry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EnsembleEntry {
    pub weight: f64,
    pub amplitudes: Vec<[f64; 2]>,
    pub detectors: Vec<Vec<[f64; 2]>>,
}

/// States described by a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScenario {
    pub pure: Option<PureJointState>,
    pub ensemble: Option<Ensemble>,
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    /// Malformed JSON or wrong shape; carries location and field path.
    #[error("parse error at line {line}, column {column}, field `{path}`: {message}")]
    Parse {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },
    /// Well-formed file whose contents break a state invariant.
    #[error("{context}: {source}")]
    Invariant {
        context: String,
        #[source]
        source: DualityError,
    },
}

impl ScenarioError {
    fn invariant(context: impl Into<String>, source: DualityError) -> Self {
        ScenarioError::Invariant {
            context: context.into(),
            source,
        }
    }

    fn structural(path: &str, message: impl Into<String>) -> Self {
        ScenarioError::Parse {
            line: 0,
            column: 0,
            path: path.to_string(),
            message: message.into(),
        }
    }
}

fn complex_list(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect()
}

fn to_pairs(z: &[Complex64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn pure_from_parts(
    n: usize,
    amplitudes: &[[f64; 2]],
    detectors: &[Vec<[f64; 2]>],
    context: &str,
) -> Result<PureJointState, ScenarioError> {
    if amplitudes.len() != n {
        return Err(ScenarioError::invariant(
            context,
            DualityError::invariant(
                format!("expected n = {n} amplitudes, found {}", amplitudes.len()),
                None,
            ),
        ));
    }
    if detectors.len() != n {
        return Err(ScenarioError::invariant(
            context,
            DualityError::invariant(
                format!(
                    "expected n = {n} detector states, found {}",
                    detectors.len()
                ),
                None,
            ),
        ));
    }
    let amps = PathAmplitudes::new(complex_list(amplitudes))
        .map_err(|e| ScenarioError::invariant(format!("{context}.amplitudes"), e))?;
    let vectors = detectors
        .iter()
        .enumerate()
        .map(|(i, d)| {
            ComplexVector::new(complex_list(d))
                .map_err(|e| ScenarioError::invariant(format!("{context}.detectors[{i}]"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dets = DetectorSet::new(vectors)
        .map_err(|e| ScenarioError::invariant(format!("{context}.detectors"), e))?;
    PureJointState::new(amps, dets).map_err(|e| ScenarioError::invariant(context, e))
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            let inner = err.into_inner();
            ScenarioError::Parse {
                line: inner.line(),
                column: inner.column(),
                path,
                message: inner.to_string(),
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Describes a pure state.
    pub fn from_pure(s: &PureJointState) -> Self {
        ScenarioFile {
            version: SCENARIO_VERSION,
            n: s.n(),
            amplitudes: Some(to_pairs(s.amplitudes().as_slice())),
            detectors: Some(
                s.detectors()
                    .vectors()
                    .iter()
                    .map(|v| to_pairs(v.entries()))
                    .collect(),
            ),
            ensemble: None,
        }
    }

    /// Describes an ensemble, with no top-level pure state.
    pub fn from_ensemble(e: &Ensemble) -> Self {
        ScenarioFile {
            version: SCENARIO_VERSION,
            n: e.n(),
            amplitudes: None,
            detectors: None,
            ensemble: Some(
                e.components()
                    .iter()
                    .map(|(w, s)| {
                        let f = Self::from_pure(s);
                        EnsembleEntry {
                            weight: *w,
                            amplitudes: f.amplitudes.unwrap_or_default(),
                            detectors: f.detectors.unwrap_or_default(),
                        }
                    })
                    .collect(),
            ),
        }
    }

    /// Validates and builds the states. No normalization is repaired.
    pub fn load(&self) -> Result<LoadedScenario, ScenarioError> {
        if self.version != SCENARIO_VERSION {
            return Err(ScenarioError::structural(
                "version",
                format!(
                    "unsupported version {}, expected {SCENARIO_VERSION}",
                    self.version
                ),
            ));
        }
        let pure = match (&self.amplitudes, &self.detectors) {
            (Some(a), Some(d)) => Some(pure_from_parts(self.n, a, d, "state")?),
            (None, None) => None,
            (Some(_), None) => {
                return Err(ScenarioError::structural(
                    "detectors",
                    "missing field `detectors`",
                ))
            }
            (None, Some(_)) => {
                return Err(ScenarioError::structural(
                    "amplitudes",
                    "missing field `amplitudes`",
                ))
            }
        };
        let ensemble = match &self.ensemble {
            None => None,
            Some(entries) => {
                let components = entries
                    .iter()
                    .enumerate()
                    .map(|(k, e)| {
                        let ctx = format!("ensemble[{k}]");
                        pure_from_parts(self.n, &e.amplitudes, &e.detectors, &ctx)
                            .map(|s| (e.weight, s))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(
                    Ensemble::new(components)
                        .map_err(|e| ScenarioError::invariant("ensemble", e))?,
                )
            }
        };
        if pure.is_none() && ensemble.is_none() {
            return Err(ScenarioError::structural(
                "amplitudes",
                "scenario needs `amplitudes`/`detectors`, `ensemble`, or both",
            ));
        }
        Ok(LoadedScenario { pure, ensemble })
    }
}

/// Parses and validates in one step.
pub fn load_scenario(text: &str) -> Result<LoadedScenario, ScenarioError> {
    ScenarioFile::parse(text)?.load()
}

/// Fixed 17-significant-digit rendering.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_row(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        push_row(
            &mut out,
            &[r.theta, r.d2, r.c2, r.db2_bound, r.sum_dc, r.sum_dbc].map(format_number),
        );
    }
    out
}

/// Per-sample row of a random-state sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomSample {
    pub sample: usize,
    pub d2: f64,
    pub c2: f64,
    pub dq: f64,
    pub sum: f64,
}

pub fn random_sweep_csv(samples: &[RandomSample]) -> String {
    let mut out = String::new();
    out.push_str(RANDOM_SWEEP_HEADER);
    out.push('\n');
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s.sample,
            format_number(s.d2),
            format_number(s.c2),
            format_number(s.dq),
            format_number(s.sum)
        );
    }
    out
}

/// Parses a sweep CSV back into rows. Used to check files written by the CLI.
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.split('\n');
    match lines.next() {
        Some(SWEEP_HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(k, line)| {
            let v = line
                .split(',')
                .map(str::parse::<f64>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("row {k}: {e}"))?;
            if v.len() != 6 {
                return Err(format!("row {k}: expected 6 columns, found {}", v.len()));
            }
            Ok(SweepRow {
                theta: v[0],
                d2: v[1],
                c2: v[2],
                db2_bound: v[3],
                sum_dc: v[4],
                sum_dbc: v[5],
            })
        })
        .collect()
}
