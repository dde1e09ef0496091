//! Sequential proposal engine: static profiles, round-ordered play, traces,
//! proposal trees and hopeless-pair detection.

mod run;
mod trace;
mod tree;

pub use run::{
    naive_profiles, run_gale_shapley, run_gale_shapley_among, run_gale_shapley_with, run_static, run_static_with,
    EngineOptions, Schedule, StaticProfile,
};
pub use trace::{format_trace, hopeless_pairs, PlayElement, PlayTrace, Round, TraceStyle};
pub use tree::{proposal_tree, ProposalTree, TreeNode};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("profile count {found} does not match {expected} boys")]
    ProfileCount { expected: usize, found: usize },
    #[error("profile of {0} repeats or names an unknown girl")]
    BadProfile(String),
    #[error("{0} ran out of proposals while uncoupled")]
    ProfileExhausted(String),
    #[error("proposal tree needs a naive play with refusals recorded")]
    NotNaive,
    #[error("trace does not end in a complete matching")]
    IncompleteTrace,
}
