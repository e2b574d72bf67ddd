//! Build the strong interval tree of a signed permutation and read off its
//! summary statistics.
//!
//! Run with `cargo run --example build_tree`.

use persort::sit::{
    count_internal_vertices, count_prime_vertices, count_twins, pathlength, tree_to_permutation,
    validate_tree,
};
use persort::{build_sit, SignedPermutation};

fn main() -> persort::Result<()> {
    let sigma: SignedPermutation = "1 -8 4 2 -5 3 9 -6 7 12 10 -14 13 -11 15 -17 16 18".parse()?;
    let tree = build_sit(&sigma);

    println!("permutation: {sigma}");
    println!("{tree}");
    println!("internal vertices: {}", count_internal_vertices(&tree));
    println!("prime vertices:    {}", count_prime_vertices(&tree));
    println!("twins:             {}", count_twins(&tree));
    println!("pathlength:        {}", pathlength(&tree));

    // the tree determines the permutation and passes its own validator
    assert!(validate_tree(&tree).is_empty());
    assert_eq!(tree_to_permutation(&tree)?, sigma);
    println!("round trip: ok");
    Ok(())
}
