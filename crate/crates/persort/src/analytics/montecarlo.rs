//! Monte Carlo estimates of the average-case statistics.
//!
//! Trials run in parallel, but each trial derives its own generator from the
//! master seed and the trial index, and all accumulation is exact integer
//! arithmetic; floating point appears only when the final means are taken.
//! Reports are therefore byte-identical for a given (n, trials, seed),
//! independent of thread count and scheduling.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commuting::{reversal_profile, CommutingSampler};
use crate::perm::SignedPermutation;
use crate::sit::{build_sit, count_prime_vertices, count_twins, shape_is_dominant};

use super::predict::theoretical_predictions;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StatsReport {
    pub schema: String,
    pub model: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// `git describe` of the binary that produced the report.
    pub build: String,
    pub stats: Vec<Statistic>,
    pub distributions: Vec<Distribution>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Statistic {
    pub name: String,
    pub mean: f64,
    pub prediction: Option<f64>,
    pub abs_deviation: Option<f64>,
    pub rel_deviation: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Distribution {
    pub name: String,
    /// Count per value, starting at 0.
    pub counts: Vec<u64>,
}

impl Statistic {
    fn new(name: &str, mean: f64, prediction: Option<f64>) -> Self {
        let abs_deviation = prediction.map(|p| (mean - p).abs());
        let rel_deviation = prediction
            .filter(|p| *p != 0.0)
            .map(|p| ((mean - p) / p).abs());
        Statistic {
            name: name.into(),
            mean,
            prediction,
            abs_deviation,
            rel_deviation,
        }
    }
}

impl StatsReport {
    pub fn stat(&self, name: &str) -> Option<&Statistic> {
        self.stats.iter().find(|s| s.name == name)
    }

    pub fn distribution(&self, name: &str) -> Option<&Distribution> {
        self.distributions.iter().find(|d| d.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("key,value\n");
        for (k, v) in [
            ("schema", self.schema.clone()),
            ("model", self.model.clone()),
            ("n", self.n.to_string()),
            ("trials", self.trials.to_string()),
            ("seed", self.seed.to_string()),
            ("build", self.build.clone()),
        ] {
            out.push_str(&format!("{k},{v}\n"));
        }
        out.push_str("\nname,mean,prediction,abs_deviation,rel_deviation\n");
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for s in &self.stats {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.name,
                s.mean,
                cell(s.prediction),
                cell(s.abs_deviation),
                cell(s.rel_deviation)
            ));
        }
        for d in &self.distributions {
            out.push('\n');
            out.push_str(&format!("{},count\n", d.name));
            for (k, c) in d.counts.iter().enumerate() {
                out.push_str(&format!("{k},{c}\n"));
            }
        }
        out
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Per-trial generator, independent of how trials are scheduled.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial as u64)))
}

fn add_hist(into: &mut Vec<u64>, value: usize) {
    if into.len() <= value {
        into.resize(value + 1, 0);
    }
    into[value] += 1;
}

fn merge_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, v) in b.into_iter().enumerate() {
        a[i] += v;
    }
    a
}

#[derive(Clone, Default)]
struct RandomAcc {
    twin_hist: Vec<u64>,
    prime_hist: Vec<u64>,
    twin_sum: u64,
    shape_hits: u64,
    pow2_p_sum: BigUint,
}

impl RandomAcc {
    fn merge(self, other: RandomAcc) -> RandomAcc {
        RandomAcc {
            twin_hist: merge_hist(self.twin_hist, other.twin_hist),
            prime_hist: merge_hist(self.prime_hist, other.prime_hist),
            twin_sum: self.twin_sum + other.twin_sum,
            shape_hits: self.shape_hits + other.shape_hits,
            pow2_p_sum: self.pow2_p_sum + other.pow2_p_sum,
        }
    }
}

/// Tree-shape statistics over uniform random signed permutations: twin and
/// prime-vertex histograms, the dominant-shape fraction, and the mean of
/// `2^p` governing the sign-assignment search.
pub fn monte_carlo_random_perm_stats(n: usize, trials: usize, seed: u64) -> StatsReport {
    assert!(n >= 1 && trials >= 1);
    let acc = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let sigma = SignedPermutation::random_with(n, &mut rng);
            let tree = build_sit(&sigma);
            let twins = count_twins(&tree);
            let primes = count_prime_vertices(&tree);
            let mut acc = RandomAcc::default();
            add_hist(&mut acc.twin_hist, twins);
            add_hist(&mut acc.prime_hist, primes);
            acc.twin_sum = twins as u64;
            acc.shape_hits = shape_is_dominant(&tree) as u64;
            acc.pow2_p_sum = BigUint::from(1u32) << primes;
            acc
        })
        .reduce(RandomAcc::default, RandomAcc::merge);

    let t = trials as f64;
    let pow2_mean = ratio_to_f64(&acc.pow2_p_sum, trials);
    let prime_sum: u64 = acc
        .prime_hist
        .iter()
        .enumerate()
        .map(|(p, &c)| p as u64 * c)
        .sum();
    StatsReport {
        schema: "persort/1".into(),
        model: "random".into(),
        n,
        trials,
        seed,
        build: crate::GIT_DESCRIBE.into(),
        stats: vec![
            Statistic::new("twins_mean", acc.twin_sum as f64 / t, Some(2.0)),
            Statistic::new("prime_vertices_mean", prime_sum as f64 / t, None),
            Statistic::new("shape_fraction", acc.shape_hits as f64 / t, Some(1.0)),
            Statistic::new("pow2_p_mean", pow2_mean, None),
        ],
        distributions: vec![
            Distribution {
                name: "twins".into(),
                counts: acc.twin_hist,
            },
            Distribution {
                name: "prime_vertices".into(),
                counts: acc.prime_hist,
            },
        ],
    }
}

fn ratio_to_f64(sum: &BigUint, trials: usize) -> f64 {
    if sum.is_zero() {
        return 0.0;
    }
    let shift = sum.bits().saturating_sub(512);
    ((sum >> shift).to_f64().unwrap()) / trials as f64 * 2f64.powi(shift as i32)
}

#[derive(Clone, Default)]
struct CommutingAcc {
    reversals: u64,
    total_length: u64,
    length_one: u64,
    internal: u64,
    pathlength: u64,
}

impl CommutingAcc {
    fn merge(self, o: CommutingAcc) -> CommutingAcc {
        CommutingAcc {
            reversals: self.reversals + o.reversals,
            total_length: self.total_length + o.total_length,
            length_one: self.length_one + o.length_one,
            internal: self.internal + o.internal,
            pathlength: self.pathlength + o.pathlength,
        }
    }
}

/// Scenario statistics over uniform commuting permutations, with the
/// leading-order predictions attached.
pub fn monte_carlo_commuting_stats(n: usize, trials: usize, seed: u64) -> StatsReport {
    assert!(n >= 2 && trials >= 1);
    let sampler = CommutingSampler::new(n).expect("n >= 2");
    let acc = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let sigma = sampler.sample(&mut rng);
            let prof = reversal_profile(&sigma).expect("sampler output commutes");
            CommutingAcc {
                reversals: prof.count as u64,
                total_length: prof.lengths.iter().map(|&l| l as u64).sum(),
                length_one: prof.length_one_count as u64,
                internal: prof.internal_vertices as u64,
                pathlength: prof.pathlength,
            }
        })
        .reduce(CommutingAcc::default, CommutingAcc::merge);

    let t = trials as f64;
    let p = theoretical_predictions(n);
    StatsReport {
        schema: "persort/1".into(),
        model: "commuting".into(),
        n,
        trials,
        seed,
        build: crate::GIT_DESCRIBE.into(),
        stats: vec![
            Statistic::new("reversals_mean", acc.reversals as f64 / t, Some(p.reversals)),
            Statistic::new(
                "reversal_length_mean",
                acc.total_length as f64 / acc.reversals as f64,
                Some(p.reversal_length),
            ),
            Statistic::new(
                "length_one_mean",
                acc.length_one as f64 / t,
                Some(p.length_one_reversals),
            ),
            Statistic::new(
                "internal_vertices_mean",
                acc.internal as f64 / t,
                Some(p.internal_vertices),
            ),
            Statistic::new(
                "pathlength_mean",
                acc.pathlength as f64 / t,
                Some(p.pathlength),
            ),
        ],
        distributions: Vec::new(),
    }
}
