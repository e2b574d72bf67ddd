//! Perfect sorting of signed permutations by reversals.
//!
//! The crate is organized around the strong interval tree of a signed
//! permutation:
//!
//! - [`perm`]: signed permutations, reversals, scenarios, common intervals;
//! - [`sit`]: building, validating and inverting strong interval trees;
//! - [`sorter`]: parsimonious (non-perfect) sorting by reversals;
//! - [`perfect`]: parsimonious perfect scenarios via sign assignments on the
//!   tree;
//! - [`commuting`]: commuting permutations, their unique scenario, and a
//!   uniform sampler;
//! - [`analytics`]: exact enumeration and Monte Carlo estimates of the
//!   average-case statistics.

pub mod analytics;
pub mod cli;
pub mod commuting;
pub mod error;
pub mod perfect;
pub mod perm;
pub mod sit;
pub mod sorter;

pub use error::{Error, Result};
pub use perm::{Interval, Reversal, Scenario, SignedPermutation, SortClass};
pub use sit::{build_sit, tree_to_permutation, SitTree, SitVertex};

/// `git describe` of the build, embedded into reports.
pub const GIT_DESCRIBE: &str = env!("PERSORT_GIT_DESCRIBE");
