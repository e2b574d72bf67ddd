//! Plain (not necessarily perfect) sorting by reversals, to the identity and
//! to the reversed identity.
//!
//! Run with `cargo run --example plain_sort`.

use persort::sorter::{distance_to_target, sort_to_target, SortTarget};
use persort::SignedPermutation;

fn main() -> persort::Result<()> {
    let sigma: SignedPermutation = "3 1 -4 -2".parse()?;
    for target in [SortTarget::Identity, SortTarget::ReversedIdentity] {
        let d = distance_to_target(&sigma, target);
        let scenario = sort_to_target(&sigma, target);
        assert_eq!(scenario.len(), d);

        println!("{sigma} -> {target:?}: distance {d}");
        let mut cur = sigma.clone();
        for r in &scenario.steps {
            cur = cur.apply_reversal(*r)?;
            println!("  reverse {}..={}  ->  {cur}", r.lo, r.hi);
        }
    }
    Ok(())
}
