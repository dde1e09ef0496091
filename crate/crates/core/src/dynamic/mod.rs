//! Simultaneous-proposal play: every uncoupled boy proposes at each step and
//! each girl keeps the best of her incumbent and the new proposers.
//!
//! Also parses concurrent play texts, checks their plausibility and rebuilds
//! girls' lists that reproduce them.

mod play;
mod sim;
mod strategy;

pub use play::{
    infer_boy_orders, parse_play, reconstruct_preferences, validate_play, ConcurrentPlay, PlayEvent, Validation,
    Violation,
};
pub use sim::{format_concurrent, replay_matches, run_dynamic, ConcurrentTrace, GameState, Resolution, Step};
pub use strategy::{parse_strategies, strategies_from_play, Predicate, Rule, ScriptedStrategy, StrategySet};

use crate::model::ParseError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0} has no girl left to propose to")]
    StrategyExhausted(String),
    #[error("plays disagree on {girl}: no order puts {boys} consistently")]
    Conflict { girl: String, boys: String },
    #[error("play is not plausible: {0} violation(s)")]
    Implausible(usize),
}
