//! Exact enumeration: strong-interval-tree shape counts, commuting class
//! sizes, total internal vertices and pathlength, and how well the closed
//! asymptotic forms track the exact values.
//!
//! Run with `cargo run --example enumerate`.

use persort::analytics::{
    commuting_count, internal_vertex_series, pathlength_series, ratio, schroder_asymptotic,
    schroder_numbers, theoretical_predictions,
};

fn main() -> persort::Result<()> {
    let n = 200;
    let s = schroder_numbers(n);
    println!("tree shape counts S_1..S_8: {:?}", &s[..8]);
    println!("commuting permutations, n = 8: {}", commuting_count(8)?);

    let iv = internal_vertex_series(n);
    let pl = pathlength_series(n);
    println!("total internal vertices, n = 1..6: {:?}", &iv[..6]);
    println!("total pathlength,        n = 1..6: {:?}", &pl[..6]);

    // exact means at n = 200 against the closed predictions
    let p = theoretical_predictions(n);
    println!(
        "mean internal vertices at n = {n}: exact {:.3}, predicted {:.3}",
        ratio(&iv[n - 1], &s[n - 1]),
        p.internal_vertices
    );
    println!(
        "mean pathlength at n = {n}:        exact {:.1}, predicted {:.1}",
        ratio(&pl[n - 1], &s[n - 1]),
        p.pathlength
    );
    println!(
        "S_100 / asymptotic form: {:.5}",
        num_traits::ToPrimitive::to_f64(&s[99]).unwrap() / schroder_asymptotic(100)
    );
    Ok(())
}
