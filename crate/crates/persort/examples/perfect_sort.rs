//! Find a parsimonious perfect scenario: a shortest sequence of reversals to
//! the identity (or its reverse) in which every reversed set of values is a
//! union of value sets already common to the source and the target.
//!
//! Run with `cargo run --example perfect_sort`.

use persort::perfect::{parsimonious_perfect_scenario, validate_perfect, ScenarioReport};
use persort::SignedPermutation;

fn main() -> persort::Result<()> {
    let sigma: SignedPermutation = "1 -8 4 2 -5 3 9 -6 7 12 10 -14 13 -11 15 -17 16 18".parse()?;
    let result = parsimonious_perfect_scenario(&sigma)?;

    println!("permutation:    {sigma}");
    println!("perfect length: {}", result.length);
    println!(
        "prime vertices: {} ({} sign assignments explored)",
        result.prime_count, result.assignments_explored
    );
    assert!(validate_perfect(&sigma, &result.scenario));

    // the wire format carries each reversed value set alongside the positions
    let report = ScenarioReport::new(&sigma, &result.scenario, result.prime_count)?;
    for step in &report.steps {
        println!("  reverse positions {}..={}  values {:?}", step.lo, step.hi, step.set);
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
