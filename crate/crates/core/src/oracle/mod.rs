//! Brute-force ground truth on small instances: every static profile
//! combination, worst-case partners, the full game graph over elementary
//! positions, and a play-level check of coalition control.
//!
//! Everything here is exponential. Caps are configuration and exceeding one
//! is an error; nothing is ever truncated silently.

mod dag;
mod reach;

pub use dag::{enumerate_game_dag, GameDag};
pub use reach::{control_spot_check, undeterable_by_play, ControlCheck, ControlDivergence};

use crate::engine::{run_gale_shapley, run_static, EngineError, Schedule, StaticProfile};
use crate::model::{BoyId, GirlId, Instance, Matching};
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("{runs} plays exceed the limit of {limit}")]
    TooManyRuns { runs: u128, limit: u128 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest n for profile enumeration.
    pub max_n: usize,
    /// Largest n for the game graph.
    pub max_dag_n: usize,
    /// Plays allowed in one enumeration.
    pub max_runs: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_n: 5, max_dag_n: 4, max_runs: 20_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProfileSpace {
    /// Every complete proposal order.
    All,
    /// Orders naming every girl weakly above the Gale-Shapley partner
    /// before any girl below him.
    Conservative,
}

/// Outcomes of every profile combination in a declared space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutcomeAtlas {
    pub space: ProfileSpace,
    /// Per boy, his admissible orders.
    pub profiles: Vec<Vec<Vec<GirlId>>>,
    /// Girl per boy for each combination, last boy's index varying fastest.
    pub outcomes: Vec<Vec<GirlId>>,
    /// Per boy, his best and worst partner over the atlas.
    pub best: Vec<GirlId>,
    pub worst: Vec<GirlId>,
}

impl OutcomeAtlas {
    pub fn combinations(&self) -> usize {
        self.outcomes.len()
    }

    pub fn contains(&self, m: &Matching) -> bool {
        let row: Option<Vec<GirlId>> = (0..m.n()).map(|b| m.girl_of(BoyId(b))).collect();
        row.is_some_and(|row| self.outcomes.contains(&row))
    }

    /// Distinct final matchings.
    pub fn distinct(&self) -> BTreeSet<Vec<GirlId>> {
        self.outcomes.iter().cloned().collect()
    }
}

/// Deferred acceptance reduced to its final matching. Proposal order does
/// not change the outcome of static play, so a stack of free boys will do.
pub(crate) struct Kernel {
    /// `rank[g][b]`: position of `b` in `g`'s list.
    rank: Vec<Vec<usize>>,
}

impl Kernel {
    pub(crate) fn new(inst: &Instance) -> Self {
        let rank = inst.girls().map(|g| inst.boys().map(|b| inst.girl_prefs(g).position(b)).collect()).collect();
        Kernel { rank }
    }

    /// Girl per boy, or `None` if some boy runs out of proposals.
    pub(crate) fn outcome(&self, profiles: &[&[GirlId]]) -> Option<Vec<GirlId>> {
        let n = profiles.len();
        let mut next = vec![0; n];
        let mut holder: Vec<Option<usize>> = vec![None; n];
        let mut free: Vec<usize> = (0..n).rev().collect();
        while let Some(b) = free.pop() {
            let g = profiles[b].get(next[b])?.0;
            next[b] += 1;
            match holder[g] {
                Some(h) if self.rank[g][h] < self.rank[g][b] => free.push(b),
                other => {
                    holder[g] = Some(b);
                    free.extend(other);
                }
            }
        }
        let mut partner = vec![GirlId(0); n];
        for (g, b) in holder.iter().enumerate() {
            partner[b.expect("every boy holds a girl")] = GirlId(g);
        }
        Some(partner)
    }
}

fn check_cap(inst: &Instance, opts: &OracleOptions) -> Result<(), OracleError> {
    if inst.n() > opts.max_n {
        return Err(OracleError::CapExceeded { n: inst.n(), cap: opts.max_n });
    }
    Ok(())
}

fn check_runs(spaces: &[Vec<Vec<GirlId>>], opts: &OracleOptions) -> Result<(), OracleError> {
    let runs = spaces.iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
    if runs > opts.max_runs {
        return Err(OracleError::TooManyRuns { runs, limit: opts.max_runs });
    }
    Ok(())
}

fn all_orders(n: usize) -> Vec<Vec<GirlId>> {
    (0..n).map(GirlId).permutations(n).collect()
}

/// Girls weakly above `partner` in any order, then the rest in any order.
fn conservative_orders(inst: &Instance, b: BoyId, partner: GirlId) -> Vec<Vec<GirlId>> {
    let prefs = inst.boy_prefs(b);
    let (above, below): (Vec<GirlId>, Vec<GirlId>) = inst.girls().partition(|&g| prefs.at_or_above(g, partner));
    let tails: Vec<Vec<GirlId>> = below.iter().copied().permutations(below.len()).collect();
    above
        .iter()
        .copied()
        .permutations(above.len())
        .cartesian_product(tails)
        .map(|(mut head, tail)| {
            head.extend(tail);
            head
        })
        .collect()
}

fn spaces(inst: &Instance, space: ProfileSpace) -> Vec<Vec<Vec<GirlId>>> {
    match space {
        ProfileSpace::All => vec![all_orders(inst.n()); inst.n()],
        ProfileSpace::Conservative => {
            let gs = run_gale_shapley(inst).final_matching;
            inst.boys().map(|b| conservative_orders(inst, b, gs.girl_of(b).expect("complete"))).collect()
        }
    }
}

/// Orders girls by `b`'s list, ties by written position.
fn rank_key(inst: &Instance, b: BoyId, g: GirlId) -> (usize, usize) {
    let p = inst.boy_prefs(b);
    (p.level_of(g), p.position(g))
}

pub fn enumerate_static_outcomes(
    inst: &Instance,
    space: ProfileSpace,
    opts: &OracleOptions,
) -> Result<OutcomeAtlas, OracleError> {
    check_cap(inst, opts)?;
    let profiles = spaces(inst, space);
    check_runs(&profiles, opts)?;
    let kernel = Kernel::new(inst);
    let outcomes: Vec<Vec<GirlId>> = profiles
        .iter()
        .map(|s| s.iter().map(Vec::as_slice))
        .multi_cartesian_product()
        .map(|combo| kernel.outcome(&combo).expect("complete orders never run out"))
        .collect();
    let extreme = |worst: bool| -> Vec<GirlId> {
        inst.boys()
            .map(|b| {
                let keys = outcomes.iter().map(|row| row[b.0]);
                let pick = if worst {
                    keys.max_by_key(|&g| rank_key(inst, b, g))
                } else {
                    keys.min_by_key(|&g| rank_key(inst, b, g))
                };
                pick.expect("at least one combination")
            })
            .collect()
    };
    let best = extreme(false);
    let worst = extreme(true);
    Ok(OutcomeAtlas { space, profiles, outcomes, best, worst })
}

/// The worst girl `b` can be held to when everyone else plays a
/// conservative order and he answers each combination with his best order.
pub fn worst_case_outcome(inst: &Instance, b: BoyId, opts: &OracleOptions) -> Result<GirlId, OracleError> {
    check_cap(inst, opts)?;
    let mut profiles = spaces(inst, ProfileSpace::Conservative);
    profiles[b.0] = all_orders(inst.n());
    check_runs(&profiles, opts)?;
    let kernel = Kernel::new(inst);
    let others: Vec<&Vec<Vec<GirlId>>> =
        profiles.iter().enumerate().filter(|&(i, _)| i != b.0).map(|(_, s)| s).collect();
    let own = &profiles[b.0];
    let reply = |fixed: &[&[GirlId]]| -> GirlId {
        own.iter()
            .map(|order| {
                let mut combo = fixed.to_vec();
                combo.insert(b.0, order);
                kernel.outcome(&combo).expect("complete orders never run out")[b.0]
            })
            .min_by_key(|&g| rank_key(inst, b, g))
            .expect("at least one order")
    };
    let worst = if others.is_empty() {
        reply(&[])
    } else {
        others
            .iter()
            .map(|s| s.iter().map(Vec::as_slice))
            .multi_cartesian_product()
            .map(|fixed| reply(&fixed))
            .max_by_key(|&g| rank_key(inst, b, g))
            .expect("at least one combination")
    };
    Ok(worst)
}

/// Replays `profiles` under `trials` random schedules seeded from `seed`
/// and compares each outcome with the canonical one.
pub fn verify_schedule_invariance(
    inst: &Instance,
    profiles: &[StaticProfile],
    trials: usize,
    seed: u64,
) -> Result<bool, EngineError> {
    let reference = run_static(inst, profiles, Schedule::Canonical)?.final_matching;
    for t in 0..trials as u64 {
        let m = run_static(inst, profiles, Schedule::Random { seed: seed.wrapping_add(t) })?.final_matching;
        if m != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::naive_profiles;
    use crate::model::{gen_random, TieBreak};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn two_boys_have_four_combinations() {
        let inst = gen_random(2, 0).unwrap();
        let atlas = enumerate_static_outcomes(&inst, ProfileSpace::All, &OracleOptions::default()).unwrap();
        assert_eq!(atlas.combinations(), 4);
    }

    #[test]
    fn kernel_agrees_with_the_engine() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for seed in 0..40 {
            let inst = gen_random(2 + seed as usize % 5, seed).unwrap();
            let n = inst.n();
            let orders: Vec<Vec<GirlId>> = (0..n)
                .map(|_| {
                    let mut o: Vec<GirlId> = inst.girls().collect();
                    o.shuffle(&mut rng);
                    o
                })
                .collect();
            let profiles: Vec<StaticProfile> =
                orders.iter().map(|o| StaticProfile::new(o.clone(), n).unwrap()).collect();
            let m = run_static(&inst, &profiles, Schedule::Canonical).unwrap().final_matching;
            let slices: Vec<&[GirlId]> = orders.iter().map(Vec::as_slice).collect();
            let row = Kernel::new(&inst).outcome(&slices).unwrap();
            assert!(inst.boys().all(|b| m.girl_of(b) == Some(row[b.0])));
        }
    }

    #[test]
    fn short_orders_can_run_out() {
        let inst = Instance::from_orders(&[vec![0, 1], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap();
        let short: [&[GirlId]; 2] = [&[GirlId(0)], &[GirlId(0)]];
        assert_eq!(Kernel::new(&inst).outcome(&short), None);
    }

    #[test]
    fn caps_are_errors() {
        let inst = gen_random(6, 0).unwrap();
        let e = enumerate_static_outcomes(&inst, ProfileSpace::All, &OracleOptions::default()).unwrap_err();
        assert_eq!(e, OracleError::CapExceeded { n: 6, cap: 5 });
        let inst = gen_random(5, 0).unwrap();
        let e = enumerate_static_outcomes(&inst, ProfileSpace::All, &OracleOptions::default()).unwrap_err();
        assert!(matches!(e, OracleError::TooManyRuns { .. }));
    }

    #[test]
    fn single_pair_is_forced() {
        let inst = Instance::from_orders(&[vec![0]], &[vec![0]]).unwrap();
        assert_eq!(worst_case_outcome(&inst, BoyId(0), &OracleOptions::default()), Ok(GirlId(0)));
    }

    #[test]
    fn conservative_orders_keep_the_partner_in_the_head() {
        let inst = gen_random(4, 5).unwrap();
        let gs = run_gale_shapley(&inst).final_matching;
        for b in inst.boys() {
            let partner = gs.girl_of(b).unwrap();
            let above = inst.girls().filter(|&g| inst.boy_prefs(b).at_or_above(g, partner)).count();
            for order in conservative_orders(&inst, b, partner) {
                assert!(order[..above].iter().all(|&g| inst.boy_prefs(b).at_or_above(g, partner)));
                assert_eq!(order.len(), 4);
            }
        }
    }

    #[test]
    fn atlas_is_deterministic() {
        let inst = gen_random(3, 4).unwrap();
        let a = enumerate_static_outcomes(&inst, ProfileSpace::All, &OracleOptions::default()).unwrap();
        let b = enumerate_static_outcomes(&inst, ProfileSpace::All, &OracleOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_boy_schedules_agree() {
        let inst = Instance::from_orders(&[vec![0]], &[vec![0]]).unwrap();
        let p = naive_profiles(&inst, TieBreak::AscendingId);
        assert_eq!(verify_schedule_invariance(&inst, &p, 5, 0), Ok(true));
    }
}
