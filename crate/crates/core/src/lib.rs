//! Exact analysis of bipartite pure-state entanglement transformations.
//!
//! States are represented by their Schmidt coefficient vectors with
//! arbitrary-precision rational entries. The crate decides deterministic
//! convertibility by majorization, checks (multiple-copy) catalysts, finds
//! multiple-copy thresholds, computes optimal conversion probabilities and
//! their bounds, and searches grids of candidate catalysts.

pub mod catalysis;
pub mod cli;
pub mod error;
pub mod limits;
pub mod majorization;
pub mod probabilistic;
pub mod rational;
pub mod report;
pub mod search;
pub mod vector;

pub use error::{Error, Result};
pub use rational::Rational;
pub use vector::{Run, SchmidtVector};
