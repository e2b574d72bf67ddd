//! Command-line front end.
//!
//! Every command is pure given its inputs and seed. Exit codes: 0 success,
//! 1 domain error (unsortable input, budget exceeded, failed check), 2 usage
//! error (bad flags, unparseable permutation). With `CI=1` in the
//! environment, randomized commands refuse to run without an explicit
//! `--seed`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytics::{
    self, monte_carlo_commuting_stats, monte_carlo_random_perm_stats, CountTable,
};
use crate::commuting::{commuting_scenario, is_commuting, reversal_profile, CommutingSampler};
use crate::error::{Error, Result};
use crate::perfect::{
    parsimonious_perfect_scenario_capped, validate_perfect, ScenarioReport,
    DEFAULT_MAX_FREE_PRIMES,
};
use crate::perm::{SignedPermutation, SortClass};
use crate::sit::{build_sit, count_prime_vertices, count_twins};
use crate::sorter::{sort_to_target, SortTarget};

#[derive(Debug, Parser)]
#[command(
    name = "persort",
    version = crate::GIT_DESCRIBE,
    about = "Perfect sorting of signed permutations by reversals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for statistical commands (0 = rayon default).
    /// Results do not depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the strong interval tree of a permutation.
    Tree(TreeArgs),
    /// Produce a sorting scenario (perfect by default).
    Sort(SortArgs),
    /// Validate a scenario file against its source permutation.
    Check(CheckArgs),
    /// Detect a commuting permutation and print its unique scenario.
    Commuting(CommutingArgs),
    /// Sample permutations uniformly.
    Random(RandomArgs),
    /// Monte Carlo statistics with analytic comparisons.
    Stats(StatsArgs),
    /// Exact count tables.
    Enumerate(EnumerateArgs),
}

/// Inline permutation like "1 -3 -2 5 4 6", or @path to read one from a file.
fn read_perm(input: &str) -> Result<SignedPermutation> {
    let text = match input.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => input.to_string(),
    };
    text.trim().parse()
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Permutation, or @file.
    #[arg(allow_hyphen_values = true)]
    pub perm: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SortArgs {
    #[arg(allow_hyphen_values = true)]
    pub perm: String,
    /// Shortest scenario preserving all common intervals (the default).
    #[arg(long, conflicts_with = "plain")]
    pub perfect: bool,
    /// Shortest unconstrained scenario to the chosen target.
    #[arg(long)]
    pub plain: bool,
    /// Target for --plain.
    #[arg(long, value_enum, default_value_t = TargetArg::Id)]
    pub target: TargetArg,
    /// Cap on free prime vertices (the sign search is 2^p assignments).
    #[arg(long, default_value_t = DEFAULT_MAX_FREE_PRIMES)]
    pub max_p: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Id,
    Idbar,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Scenario JSON produced by `sort --json`, or @- conventions as above.
    pub scenario: String,
    /// Check end state only, not interval preservation.
    #[arg(long)]
    pub plain: bool,
}

#[derive(Debug, Args)]
pub struct CommutingArgs {
    #[arg(allow_hyphen_values = true)]
    pub perm: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Perm)]
    pub model: ModelArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Uniform signed permutation.
    Perm,
    /// Uniform commuting signed permutation.
    Commuting,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_enum)]
    pub model: StatsModelArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Emit CSV instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsModelArg {
    Random,
    Commuting,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_enum)]
    pub what: WhatArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    /// Tree counts S_1..S_n.
    Schroder,
    /// Simple permutation counts (exhaustive, n <= 10).
    Simple,
    /// Permutations by prime-vertex count (exhaustive, n <= 8).
    Primecounts,
    /// Total pathlength over all trees of each size.
    Pathlength,
    /// Total internal vertices over all trees of each size.
    Internal,
    /// Permutations with a common interval of each length (exhaustive, n <= 8).
    Intervals,
    /// Twin-count histogram over all permutations of size n (n <= 10).
    Twins,
}

/// Seed resolution: explicit wins; otherwise 0, except under CI=1 where an
/// explicit seed is mandatory.
fn resolve_seed(seed: Option<u64>) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None => {
            if std::env::var("CI").as_deref() == Ok("1") {
                Err(Error::Parse(
                    "--seed is required when CI=1 (deterministic runs only)".into(),
                ))
            } else {
                Ok(0)
            }
        }
    }
}

/// Runs one parsed command and returns its stdout payload.
pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Tree(a) => cmd_tree(a),
        Command::Sort(a) => cmd_sort(a),
        Command::Check(a) => cmd_check(a),
        Command::Commuting(a) => cmd_commuting(a),
        Command::Random(a) => cmd_random(a),
        Command::Stats(a) => cmd_stats(a, cli.threads),
        Command::Enumerate(a) => cmd_enumerate(a),
    }
}

fn cmd_tree(a: &TreeArgs) -> Result<String> {
    let sigma = read_perm(&a.perm)?;
    let tree = build_sit(&sigma);
    let summary = format!(
        "n={} p={} twins={}",
        tree.n,
        count_prime_vertices(&tree),
        count_twins(&tree)
    );
    if a.json {
        let mut out = serde_json::to_string_pretty(&serde_json::json!({
            "schema": "persort/1",
            "source": sigma.to_string(),
            "tree": tree,
            "summary": summary,
        }))
        .expect("tree serializes");
        out.push('\n');
        Ok(out)
    } else {
        Ok(format!("{tree}\n{summary}\n"))
    }
}

fn cmd_sort(a: &SortArgs) -> Result<String> {
    let sigma = read_perm(&a.perm)?;
    let (scenario, p) = if a.plain {
        let target = match a.target {
            TargetArg::Id => SortTarget::Identity,
            TargetArg::Idbar => SortTarget::ReversedIdentity,
        };
        let s = sort_to_target(&sigma, target);
        let end = sigma.apply_scenario(&s)?.classify_sorted();
        let expect = match target {
            SortTarget::Identity => SortClass::Identity,
            SortTarget::ReversedIdentity => SortClass::ReversedIdentity,
        };
        if end != expect {
            return Err(Error::Parse("sorter did not reach its target".into()));
        }
        (s, 0)
    } else {
        let res = parsimonious_perfect_scenario_capped(&sigma, a.max_p)?;
        if !validate_perfect(&sigma, &res.scenario) {
            return Err(Error::Parse("scenario failed perfect validation".into()));
        }
        (res.scenario, res.prime_count)
    };
    let report = ScenarioReport::new(&sigma, &scenario, p)?;
    if a.json {
        let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
        out.push('\n');
        Ok(out)
    } else {
        let mut out = format!("length {}\ntarget {}\n", report.length, report.target);
        for s in &report.steps {
            out.push_str(&format!("reverse {}..{}\n", s.lo, s.hi));
        }
        Ok(out)
    }
}

fn cmd_check(a: &CheckArgs) -> Result<String> {
    let text = match a.scenario.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => a.scenario.clone(),
    };
    let report: ScenarioReport = serde_json::from_str(&text)?;
    let sigma: SignedPermutation = report.source.parse()?;
    let scenario = report.scenario();
    let end = sigma.apply_scenario(&scenario)?.classify_sorted();
    let reached = match report.target.as_str() {
        "Id" => end == SortClass::Identity,
        "IdBar" => end == SortClass::ReversedIdentity,
        other => return Err(Error::Parse(format!("unknown target {other:?}"))),
    };
    if !reached {
        return Err(Error::Parse("scenario does not reach its target".into()));
    }
    if !a.plain && !validate_perfect(&sigma, &scenario) {
        return Err(Error::Parse(
            "scenario breaks a common interval of the source".into(),
        ));
    }
    Ok(format!(
        "ok: {} steps, target {}\n",
        scenario.len(),
        report.target
    ))
}

fn cmd_commuting(a: &CommutingArgs) -> Result<String> {
    let sigma = read_perm(&a.perm)?;
    if !is_commuting(&sigma) {
        return Err(Error::NotCommuting {
            primes: count_prime_vertices(&build_sit(&sigma)),
        });
    }
    let scenario = commuting_scenario(&sigma)?;
    let profile = reversal_profile(&sigma)?;
    let report = ScenarioReport::new(&sigma, &scenario, 0)?;
    if a.json {
        let mut out = serde_json::to_string_pretty(&serde_json::json!({
            "schema": "persort/1",
            "scenario": report,
            "profile": {
                "count": profile.count,
                "lengths": profile.lengths,
                "length_one_count": profile.length_one_count,
                "internal_vertices": profile.internal_vertices,
                "pathlength": profile.pathlength,
            },
        }))
        .expect("report serializes");
        out.push('\n');
        Ok(out)
    } else {
        Ok(format!(
            "commuting: {} reversals, {} of length 1, internal vertices {}, pathlength {}\ntarget {}\n",
            profile.count,
            profile.length_one_count,
            profile.internal_vertices,
            profile.pathlength,
            report.target,
        ))
    }
}

fn cmd_random(a: &RandomArgs) -> Result<String> {
    let seed = resolve_seed(a.seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    match a.model {
        ModelArg::Perm => {
            if a.n == 0 {
                return Err(Error::EmptySize);
            }
            for _ in 0..a.count {
                out.push_str(&SignedPermutation::random_with(a.n, &mut rng).to_string());
                out.push('\n');
            }
        }
        ModelArg::Commuting => {
            let sampler = CommutingSampler::new(a.n)?;
            for _ in 0..a.count {
                out.push_str(&sampler.sample(&mut rng).to_string());
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

fn cmd_stats(a: &StatsArgs, threads: usize) -> Result<String> {
    if a.n < 2 || a.trials == 0 {
        return Err(Error::Parse("stats needs --n >= 2 and --trials >= 1".into()));
    }
    let seed = resolve_seed(a.seed)?;
    let report = in_pool(threads, || match a.model {
        StatsModelArg::Random => monte_carlo_random_perm_stats(a.n, a.trials, seed),
        StatsModelArg::Commuting => monte_carlo_commuting_stats(a.n, a.trials, seed),
    });
    Ok(if a.csv {
        report.to_csv()
    } else {
        report.to_json()
    })
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<String> {
    let n = a.n;
    if n == 0 {
        return Err(Error::EmptySize);
    }
    let table = match a.what {
        WhatArg::Schroder => {
            CountTable::from_values("schroder", "n", 1, analytics::schroder_numbers(n))
        }
        WhatArg::Simple => {
            CountTable::from_values("simple", "n", 1, analytics::simple_counts_bruteforce(n)?)
        }
        WhatArg::Primecounts => CountTable::from_values(
            "permutations",
            "p",
            0,
            analytics::count_by_prime_vertices(n)?,
        ),
        WhatArg::Pathlength => {
            CountTable::from_values("pathlength_total", "n", 1, analytics::pathlength_series(n))
        }
        WhatArg::Internal => CountTable::from_values(
            "internal_vertex_total",
            "n",
            1,
            analytics::internal_vertex_series(n),
        ),
        WhatArg::Intervals => CountTable::from_values(
            "permutations",
            "k",
            1,
            analytics::common_interval_length_counts(n)?,
        ),
        WhatArg::Twins => CountTable::from_values(
            "permutations",
            "twins",
            0,
            analytics::exhaustive_twin_distribution(n)?,
        ),
    };
    Ok(if a.json { table.to_json() } else { table.to_csv() })
}

/// Full entry point: parse, execute, print, map errors to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses 0 for --help/--version and 2 for usage errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::Io(_) | Error::Json(_) => 2,
                _ => 1,
            }
        }
    }
}
