//! Wave–particle duality quantifiers for N-path interference.
//!
//! A quanton passing through `N` paths leaves a path detector in one of the
//! states `|d_i⟩`. From the joint state this crate computes the coherence `C`
//! of the reduced quanton state, the path distinguishability `D` and its
//! UQSD-based relative `D_Q`, and checks `D² + C² ≤ 1` (an equality for pure
//! joint states). The closed-form upper bound on the minimum-error
//! distinguishability `D_B` is included for comparison.
//!
//! ```
//! use npath_duality::{measures, scenarios};
//!
//! let state = scenarios::figure1(std::f64::consts::FRAC_PI_4).unwrap();
//! let report = measures::full_report(&state).unwrap();
//! assert!((report.coherence - 1.0 / 3.0).abs() < 1e-12);
//! assert!((report.duality_sum - 1.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod duality;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod pattern;
pub mod scenarios;
pub mod state;

pub use duality::{
    bagan_comparison, check_dq_identity, check_mixed_duality, check_pure_duality, durr_criteria,
    uqsd_feasible, BaganComparison, DualityVerdict, DurrReport,
};
pub use error::{DualityError, Result};
pub use linalg::{gram, inner, numerical_rank, ComplexMatrix, ComplexScalar, ComplexVector};
pub use measures::{full_report, MeasureReport};
pub use scenarios::{Family, ScenarioSpec, SweepRow};
pub use state::{
    partial_trace, reduce_ensemble, DetectorSet, Ensemble, PathAmplitudes, PureJointState,
    QuantonDensityMatrix,
};
