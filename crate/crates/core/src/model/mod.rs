//! Instances, preference lists, matchings, the instance file format,
//! instance transformers, generators and stability checking.

mod format;
mod generate;
mod ids;
mod instance;
mod matching;
mod prefs;
mod stability;
mod transform;

pub use format::{parse_instance, parse_pairs, write_instance, BidDirectives, InstanceFile, ParseError};
pub use generate::{gen_inferno, gen_random, girl_lists_from_receipts, Receipt};
pub use ids::{boys, girls, BoyId, GirlId, Id};
pub use instance::{AugmentedInstance, Instance, SubInstance};
pub use matching::Matching;
pub use prefs::{PreferenceList, TieBreak};
pub use stability::{blocking_pairs, is_stable};
pub use transform::{add_rejector_boys, expand_slots, pad_fictitious, RejectorInstance, SlottedInstance};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("empty tie-group")]
    EmptyTieGroup,
    #[error("unknown id {0}")]
    UnknownId(String),
    #[error("duplicate id {0} in a preference list")]
    DuplicateId(String),
    #[error("incomplete preference list: expected {expected} entries, found {found}")]
    IncompleteList { expected: usize, found: usize },
    #[error("side sizes differ: {boys} boys vs {girls} girls")]
    SizeMismatch { boys: usize, girls: usize },
    #[error("girls' lists must be strict")]
    GirlTie,
    #[error("matching assigns a boy or girl twice")]
    NotInjective,
    #[error("matching is incomplete")]
    IncompleteMatching,
    #[error("size {0} is below the minimum for this construction")]
    TooSmall(usize),
    #[error("ult of {0} lies below his bottom")]
    UltBelowBottom(String),
}
