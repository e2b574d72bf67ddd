//! Exact enumeration and statistical verification of the average-case
//! behaviour of the tree and scenario statistics.

pub mod exact;
pub mod montecarlo;
pub mod predict;
pub mod series;

pub use exact::{
    commuting_count, common_interval_length_counts, count_by_prime_vertices,
    enumerate_shapes, exhaustive_twin_distribution, interval_count_bound,
    simple_counts_bruteforce, Shape,
};
pub use montecarlo::{
    monte_carlo_commuting_stats, monte_carlo_random_perm_stats, Distribution, Statistic,
    StatsReport,
};
pub use predict::{
    pathlength_constant, schroder_asymptotic, schroder_asymptotic_rounded, simple_asymptotic,
    theoretical_predictions, twin_distribution_expected, twin_tv_distance, Predictions,
    Tolerances,
};
pub use series::{internal_vertex_series, pathlength_series, ratio, schroder_numbers};

use num_bigint::BigUint;

/// A named table of exact counts, indexed by size (or by a secondary
/// parameter such as the prime-vertex count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub name: String,
    /// Label of the index column, e.g. `n`, `p`, `k`.
    pub index: String,
    pub entries: Vec<(usize, BigUint)>,
}

impl CountTable {
    pub fn new(name: &str, index: &str, entries: Vec<(usize, BigUint)>) -> Self {
        CountTable {
            name: name.into(),
            index: index.into(),
            entries,
        }
    }

    /// Entries from values listed starting at index `start`.
    pub fn from_values<T: Into<BigUint>>(
        name: &str,
        index: &str,
        start: usize,
        values: Vec<T>,
    ) -> Self {
        Self::new(
            name,
            index,
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (start + i, v.into()))
                .collect(),
        )
    }

    pub fn get(&self, index: usize) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, v)| v)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.index, self.name);
        for (i, v) in &self.entries {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(i, v)| serde_json::json!({ "index": i, "value": v.to_string() }))
            .collect();
        let mut out = serde_json::to_string_pretty(&serde_json::json!({
            "schema": "persort/1",
            "name": self.name,
            "index": self.index,
            "entries": entries,
        }))
        .expect("table serializes");
        out.push('\n');
        out
    }
}
