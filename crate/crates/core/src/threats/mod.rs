//! Veto power, control over sets of girls, external stability and the
//! expanding-wrath search for outcomes a boy can secure with threats.
//!
//! Everything here rests on one primitive: a maximum bipartite matching
//! between boys and the girls each may hold.

mod control;
mod wrath;

pub use control::{has_control, max_bipartite_matching, max_controlled_prefix, satisfiable_all, Control, ControlQuery};
pub use wrath::{is_outcome_feasible, FeasibilityReport, Verdict, WrathOptions, WrathState};

use crate::model::{BoyId, GirlId, Instance, Matching};
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThreatError {
    #[error("{0} is promised to two boys")]
    SharedGirl(String),
    #[error("{0} is not in the instance")]
    Unknown(String),
}

/// Boys `C` with their promised girls `Mc`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Coalition {
    promises: BTreeMap<BoyId, GirlId>,
}

impl Coalition {
    pub fn new(inst: &Instance, pairs: impl IntoIterator<Item = (BoyId, GirlId)>) -> Result<Self, ThreatError> {
        let mut promises = BTreeMap::new();
        let mut used = BTreeSet::new();
        for (b, g) in pairs {
            if b.0 >= inst.n() {
                return Err(ThreatError::Unknown(format!("{b:?}")));
            }
            if g.0 >= inst.n() {
                return Err(ThreatError::Unknown(format!("{g:?}")));
            }
            if !used.insert(g) {
                return Err(ThreatError::SharedGirl(inst.girl_label(g)));
            }
            promises.insert(b, g);
        }
        Ok(Coalition { promises })
    }

    /// Every boy of `m`, promised his partner there.
    pub fn from_matching(m: &Matching) -> Self {
        Coalition { promises: m.pairs().collect() }
    }

    pub fn members(&self) -> impl Iterator<Item = BoyId> + '_ {
        self.promises.keys().copied()
    }

    pub fn contains(&self, b: BoyId) -> bool {
        self.promises.contains_key(&b)
    }

    pub fn promised(&self, b: BoyId) -> Option<GirlId> {
        self.promises.get(&b).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (BoyId, GirlId)> + '_ {
        self.promises.iter().map(|(&b, &g)| (b, g))
    }

    pub fn len(&self) -> usize {
        self.promises.len()
    }

    pub fn is_empty(&self) -> bool {
        self.promises.is_empty()
    }

    pub fn externals<'a>(&'a self, inst: &'a Instance) -> impl Iterator<Item = BoyId> + 'a {
        inst.boys().filter(|b| !self.contains(*b))
    }
}

/// An external boy and a promised girl who would take him over her partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Veto {
    pub vetoer: BoyId,
    pub girl: GirlId,
    pub ousted: BoyId,
}

pub fn vetoes(inst: &Instance, coal: &Coalition) -> Vec<Veto> {
    let mut out = Vec::new();
    for (ousted, girl) in coal.pairs() {
        for vetoer in coal.externals(inst) {
            if inst.girl_prefers(girl, vetoer, ousted) {
                out.push(Veto { vetoer, girl, ousted });
            }
        }
    }
    out.sort();
    out
}

/// External boys some promised girl prefers to her partner.
pub fn direct_vetoers(inst: &Instance, coal: &Coalition) -> BTreeSet<BoyId> {
    vetoes(inst, coal).into_iter().map(|v| v.vetoer).collect()
}

/// Direct vetoers who would gain by the veto: the girl ranks above their
/// partner in `reference`.
pub fn legitimate_vetoers(inst: &Instance, coal: &Coalition, reference: &Matching) -> BTreeSet<BoyId> {
    vetoes(inst, coal)
        .into_iter()
        .filter(|v| match reference.girl_of(v.vetoer) {
            Some(own) => inst.boy_prefers(v.vetoer, v.girl, own),
            None => true,
        })
        .map(|v| v.vetoer)
        .collect()
}

/// [`legitimate_vetoers`] against the Gale-Shapley matching.
pub fn legitimate_vetoers_vs_gs(inst: &Instance, coal: &Coalition) -> BTreeSet<BoyId> {
    legitimate_vetoers(inst, coal, &crate::engine::run_gale_shapley(inst).final_matching)
}

pub fn is_externally_stable(inst: &Instance, coal: &Coalition) -> bool {
    vetoes(inst, coal).is_empty()
}

/// Size bounds of the game tree for `n` boys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameBounds {
    /// `n!` complete matchings.
    pub terminals: BigUint,
    /// `(n+1)^n` assignments of girls to a boy or vacancy.
    pub elementary: BigUint,
    /// `n²` proposals at most in any play.
    pub proposals: usize,
}

pub fn game_bounds(n: usize) -> GameBounds {
    let terminals = (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k));
    let elementary = BigUint::from(n + 1).pow(n as u32);
    GameBounds { terminals, elementary, proposals: n * n }
}
