//! Round-trips a scenario through its JSON form and writes a sweep as CSV.

use npath_duality::io::{load_scenario, parse_sweep_csv, sweep_csv, ScenarioFile};
use npath_duality::scenarios::{degenerate, sweep};
use npath_duality::Family;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = ScenarioFile::from_pure(&degenerate(4)?);
    let json = file.to_json();
    println!("degenerate n = 4 scenario: {} bytes of JSON", json.len());
    let loaded = load_scenario(&json)?;
    assert_eq!(loaded.pure.as_ref(), Some(&degenerate(4)?));

    let broken = json.replacen("0.5", "0.6", 1);
    match load_scenario(&broken) {
        Ok(_) => println!("edited file still valid"),
        Err(e) => println!("rejected: {e}"),
    }

    let csv = sweep_csv(&sweep(
        Family::Figure2,
        0.0,
        std::f64::consts::FRAC_PI_2,
        5,
    )?);
    print!("{csv}");
    assert_eq!(parse_sweep_csv(&csv)?.len(), 5);
    Ok(())
}
