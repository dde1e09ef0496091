//! Strategic play in the stable marriage problem.
//!
//! The crate covers the sequential Gale-Shapley engine with full play traces,
//! the coalition-stable matching, top trading cycles, a simultaneous-proposal
//! simulator, veto/control/threat analysis, a brute-force oracle for small
//! instances and a bid-extended deferred acceptance variant.
//!
//! Ids are zero-based indices internally; every text format renders them with
//! the instance's label base (1 by default, 0 when a file declares `base 0`).

pub mod bidding;
pub mod coalition;
pub mod dynamic;
pub mod engine;
pub mod model;
pub mod oracle;
pub mod threats;
pub mod ttc;

pub use model::{
    AugmentedInstance, BoyId, GirlId, Instance, InstanceFile, Matching, ModelError, ParseError, PreferenceList,
};
