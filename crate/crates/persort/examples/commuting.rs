//! Commuting permutations: every pair of common intervals either nests or is
//! disjoint, so the permutation has exactly one parsimonious perfect
//! scenario, and all its reversals commute.
//!
//! Run with `cargo run --example commuting`.

use persort::commuting::{commuting_scenario, is_commuting, reversal_profile};
use persort::perfect::step_contents;
use persort::SignedPermutation;

fn main() -> persort::Result<()> {
    let sigma: SignedPermutation = "1 -3 -2 5 4 6".parse()?;
    assert!(is_commuting(&sigma));

    let scenario = commuting_scenario(&sigma)?;
    println!("permutation: {sigma}");
    for (r, set) in scenario.steps.iter().zip(step_contents(&sigma, &scenario)?) {
        println!("  reverse positions {}..={}  values {:?}", r.lo, r.hi, set);
    }

    let profile = reversal_profile(&sigma)?;
    println!("reversals:          {}", profile.count);
    println!("reversal lengths:   {:?}", profile.lengths);
    println!("length-1 reversals: {}", profile.length_one_count);
    println!("internal vertices:  {}", profile.internal_vertices);
    println!("pathlength:         {}", profile.pathlength);

    let not_commuting: SignedPermutation = "2 4 1 3".parse()?;
    assert!(!is_commuting(&not_commuting));
    println!("{not_commuting} is not commuting (prime tree)");
    Ok(())
}
