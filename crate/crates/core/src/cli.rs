//! Command-line front end, kept in the library so it can be driven in tests.
//!
//! Exit codes: 0 success, 1 check failed, 2 parse error, 3 invariant
//! violation, 64 usage error, 74 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::duality::{
    check_dq_identity, check_mixed_duality, check_pure_duality, durr_criteria, uqsd_feasible,
    DualityVerdict, DEFAULT_DUALITY_TOL,
};
use crate::io::{load_scenario, random_sweep_csv, sweep_csv, RandomSample, ScenarioError};
use crate::linalg::DEFAULT_RANK_TOL;
use crate::measures::{coherence, distinguishability_d, distinguishability_dq, MeasureReport};
use crate::scenarios::{random_state, seeded_rng, sweep, Family};
use crate::state::partial_trace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "npath-duality",
    version,
    about = "N-path wave-particle duality calculator"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep one of the two three-path figure families over theta and write CSV.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        /// Start of the grid (radians unless --degrees).
        #[arg(long, allow_hyphen_values = true)]
        theta_start: Option<f64>,
        /// End of the grid, inclusive (radians unless --degrees).
        #[arg(long, allow_hyphen_values = true)]
        theta_end: Option<f64>,
        #[arg(long, default_value_t = 181)]
        steps: usize,
        /// Output file [default: figure<id>.csv].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Interpret theta bounds as degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Evaluate every measure and the duality relation for a scenario file.
    Check {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Check saturation and the D_Q identity on seeded random pure states.
    RandomSweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "random_sweep.csv")]
        out: PathBuf,
    },
    /// Probe the four basic criteria for D.
    Durr {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Figure {
            id,
            theta_start,
            theta_end,
            steps,
            out: path,
            degrees,
        } => {
            let path = path.unwrap_or_else(|| PathBuf::from(format!("figure{id}.csv")));
            cmd_figure(id, theta_start, theta_end, steps, degrees, &path, out)
        }
        Command::Check { scenario, format } => cmd_check(&scenario, format, out),
        Command::RandomSweep {
            n,
            m,
            count,
            seed,
            out: path,
        } => cmd_random_sweep(n, m, count, seed, &path, out),
        Command::Durr { n, probes, seed } => cmd_durr(n, probes, seed, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn cmd_figure(
    id: u8,
    theta_start: Option<f64>,
    theta_end: Option<f64>,
    steps: usize,
    degrees: bool,
    path: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    let family = if id == 1 {
        Family::Figure1
    } else {
        Family::Figure2
    };
    let to_rad = |x: f64| if degrees { x.to_radians() } else { x };
    let start = theta_start.map_or(0.0, to_rad);
    let end = theta_end.map_or(std::f64::consts::PI, to_rad);
    let rows = sweep(family, start, end, steps).map_err(|e| Failure::usage(e.to_string()))?;
    write_file(path, &sweep_csv(&rows))?;
    let worst = rows
        .iter()
        .map(|r| (r.sum_dc - 1.0).abs())
        .fold(0.0_f64, f64::max);
    let _ = writeln!(out, "max |sum_DC - 1| = {worst:.3e}");
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<MeasureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<DualityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uqsd_feasible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dq_identity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mixed_verdict: Option<DualityVerdict>,
    passed: bool,
}

fn cmd_check(path: &Path, format: OutFormat, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let scenario = load_scenario(&text).map_err(|e| Failure {
        code: match e {
            ScenarioError::Parse { .. } => EXIT_PARSE,
            ScenarioError::Invariant { .. } => EXIT_INVARIANT,
        },
        message: format!("{}: {e}", path.display()),
    })?;
    let numeric = |e: crate::DualityError| Failure {
        code: EXIT_INVARIANT,
        message: e.to_string(),
    };

    let mut output = CheckOutput {
        report: None,
        verdict: None,
        uqsd_feasible: None,
        dq_identity: None,
        mixed_verdict: None,
        passed: true,
    };
    if let Some(s) = &scenario.pure {
        let verdict = check_pure_duality(s, DEFAULT_DUALITY_TOL).map_err(numeric)?;
        let identity = check_dq_identity(s, DEFAULT_DUALITY_TOL);
        output.passed &= verdict.saturated && identity;
        output.report = Some(verdict.detail.clone());
        output.verdict = Some(verdict);
        output.uqsd_feasible = Some(uqsd_feasible(s.detectors(), DEFAULT_RANK_TOL));
        output.dq_identity = Some(identity);
    }
    if let Some(e) = &scenario.ensemble {
        let verdict = check_mixed_duality(e, DEFAULT_DUALITY_TOL).map_err(numeric)?;
        output.passed &= verdict.within_bound;
        output.mixed_verdict = Some(verdict);
    }

    match format {
        OutFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&output).expect("report serializes")
            );
        }
        OutFormat::Text => write_check_text(&output, out),
    }
    Ok(if output.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn write_check_text(o: &CheckOutput, out: &mut dyn Write) {
    if let (Some(r), Some(v)) = (&o.report, &o.verdict) {
        let _ = writeln!(out, "pure state (N = {})", r.n);
        let _ = writeln!(out, "  C         = {:.15}", r.coherence);
        let _ = writeln!(out, "  D         = {:.15}", r.dist_d);
        let _ = writeln!(out, "  D_Q       = {:.15}", r.dist_dq);
        if let Some(b) = r.bagan_db_bound {
            let _ = writeln!(out, "  D_B bound = {b:.15}");
        }
        let _ = writeln!(
            out,
            "  D^2 + C^2 = {:.15}  saturated = {}",
            v.sum, v.saturated
        );
        if let Some(u) = o.uqsd_feasible {
            let _ = writeln!(out, "  uqsd_feasible = {u}");
        }
        if let Some(i) = o.dq_identity {
            let _ = writeln!(out, "  dq_identity   = {i}");
        }
    }
    if let Some(v) = &o.mixed_verdict {
        let r = &v.detail;
        let _ = writeln!(out, "ensemble (N = {})", r.n);
        let _ = writeln!(out, "  C         = {:.15}", r.coherence);
        let _ = writeln!(out, "  mean D_Q  = {:.15}", r.dist_dq);
        let _ = writeln!(
            out,
            "  D^2 + C^2 = {:.15}  within_bound = {}  saturated = {}",
            v.sum, v.within_bound, v.saturated
        );
    }
    let _ = writeln!(out, "{}", if o.passed { "PASS" } else { "FAIL" });
}

fn cmd_random_sweep(
    n: usize,
    m: usize,
    count: usize,
    seed: u64,
    path: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    if n < 2 || m < 1 || count < 1 {
        return Err(Failure::usage(format!(
            "random-sweep needs n >= 2, m >= 1, count >= 1 (got n = {n}, m = {m}, count = {count})"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut samples = Vec::with_capacity(count);
    let mut failures = 0usize;
    for k in 0..count {
        let s = random_state(&mut rng, n, m);
        let c = coherence(&partial_trace(&s)).map_err(|e| Failure::usage(e.to_string()))?;
        let d = distinguishability_d(&s);
        let dq = distinguishability_dq(&s);
        let sum = d * d + c * c;
        if (sum - 1.0).abs() > DEFAULT_DUALITY_TOL || !check_dq_identity(&s, DEFAULT_DUALITY_TOL) {
            failures += 1;
        }
        samples.push(RandomSample {
            sample: k,
            d2: d * d,
            c2: c * c,
            dq,
            sum,
        });
    }
    write_file(path, &random_sweep_csv(&samples))?;
    let worst = samples
        .iter()
        .map(|s| (s.sum - 1.0).abs())
        .fold(0.0_f64, f64::max);
    let _ = writeln!(
        out,
        "{count} samples, max |D^2 + C^2 - 1| = {worst:.3e}, failures = {failures}"
    );
    Ok(if failures == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_durr(n: usize, probes: usize, seed: u64, out: &mut dyn Write) -> CmdResult {
    let report = durr_criteria(n, probes, seed).map_err(|e| Failure::usage(e.to_string()))?;
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
    let _ = writeln!(
        out,
        "n = {}, probes = {}, seed = {seed}",
        report.n, report.probe_count
    );
    let _ = writeln!(out, "  (1) continuity    {}", mark(report.continuity_ok));
    let _ = writeln!(out, "  (2) global max    {}", mark(report.global_max_ok));
    let _ = writeln!(out, "  (3) global min    {}", mark(report.global_min_ok));
    let _ = writeln!(out, "  (4) monotonicity  {}", mark(report.monotonicity_ok));
    Ok(if report.all_ok() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
