//! Monte Carlo estimates of the average-case statistics, compared to their
//! theoretical predictions. Fully deterministic for a fixed seed, regardless
//! of thread count.
//!
//! Run with `cargo run --example monte_carlo --release`.

use persort::analytics::{monte_carlo_commuting_stats, monte_carlo_random_perm_stats};

fn main() {
    let (n, trials, seed) = (500, 2000, 1);

    let random = monte_carlo_random_perm_stats(n, trials, seed);
    println!("uniform signed permutations, n = {n}, {trials} trials:");
    for stat in &random.stats {
        match stat.prediction {
            Some(p) => println!(
                "  {:<22} mean {:>10.4}  predicted {:>10.4}",
                stat.name, stat.mean, p
            ),
            None => println!("  {:<22} mean {:>10.4}", stat.name, stat.mean),
        }
    }

    let commuting = monte_carlo_commuting_stats(n, trials, seed);
    println!("uniform commuting permutations, n = {n}, {trials} trials:");
    for stat in &commuting.stats {
        match stat.prediction {
            Some(p) => println!(
                "  {:<22} mean {:>10.4}  predicted {:>10.4}",
                stat.name, stat.mean, p
            ),
            None => println!("  {:<22} mean {:>10.4}", stat.name, stat.mean),
        }
    }
}
