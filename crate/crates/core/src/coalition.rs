//! The coalition-stable matching: repeatedly run Gale-Shapley on the boys
//! and girls still in play, fix every hopeless pair at once, remove them.

use crate::engine::{hopeless_pairs, run_gale_shapley_among, EngineOptions, PlayTrace};
use crate::model::{BoyId, GirlId, Instance, Matching, TieBreak};
use serde::Serialize;

/// One pass of the loop.
#[derive(Clone, Debug)]
pub struct CoalitionIteration {
    /// Boys still in play at the start of the pass, ascending.
    pub boys: Vec<BoyId>,
    /// Hopeless pairs fixed by this pass, ascending.
    pub fixed: Vec<(BoyId, GirlId)>,
    /// The pass's Gale-Shapley trace, kept on request.
    pub trace: Option<PlayTrace>,
}

#[derive(Clone, Debug)]
pub struct CoalitionStableResult {
    pub matching: Matching,
    pub iterations: Vec<CoalitionIteration>,
}

impl CoalitionStableResult {
    /// The best outcome each boy can secure; equals his assigned girl.
    pub fn opt(&self, b: BoyId) -> GirlId {
        self.matching.girl_of(b).expect("coalition-stable matching is complete")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CoalitionOptions {
    pub tie: TieBreak,
    pub keep_traces: bool,
}

pub fn coalition_stable_matching(inst: &Instance) -> CoalitionStableResult {
    coalition_stable_matching_with(inst, CoalitionOptions::default())
}

pub fn coalition_stable_matching_with(inst: &Instance, opts: CoalitionOptions) -> CoalitionStableResult {
    let n = inst.n();
    let mut boys: Vec<BoyId> = inst.boys().collect();
    let mut girls: Vec<GirlId> = inst.girls().collect();
    let mut matching = Matching::empty(n);
    let mut iterations = Vec::new();
    while !boys.is_empty() {
        let trace = run_gale_shapley_among(inst, &boys, &girls, opts.tie, EngineOptions::default());
        let fixed: Vec<(BoyId, GirlId)> =
            hopeless_pairs(&trace).expect("restricted play couples every boy in play").into_iter().collect();
        debug_assert!(!fixed.is_empty(), "every play ends with a hopeless pair");
        for &(b, g) in &fixed {
            matching.pair(b, g).expect("hopeless pairs are disjoint");
        }
        iterations.push(CoalitionIteration {
            boys: boys.clone(),
            fixed: fixed.clone(),
            trace: opts.keep_traces.then_some(trace),
        });
        boys.retain(|&b| matching.girl_of(b).is_none());
        girls.retain(|&g| matching.boy_of(g).is_none());
    }
    CoalitionStableResult { matching, iterations }
}

/// Per-boy comparison against the Gale-Shapley partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDelta {
    pub boy: BoyId,
    pub gs_girl: GirlId,
    pub gs_rank: usize,
    pub coalition_girl: GirlId,
    pub coalition_rank: usize,
}

impl RankDelta {
    /// Coalition rank minus GS rank; negative is an improvement.
    pub fn delta(&self) -> i64 {
        self.coalition_rank as i64 - self.gs_rank as i64
    }
}

/// One-based tie-group ranks of both partners in each boy's true list.
pub fn compare_with_gs(inst: &Instance) -> Vec<RankDelta> {
    let gs = crate::engine::run_gale_shapley(inst).final_matching;
    let cs = coalition_stable_matching(inst).matching;
    inst.boys()
        .map(|b| {
            let p = inst.boy_prefs(b);
            let gs_girl = gs.girl_of(b).expect("GS is complete");
            let coalition_girl = cs.girl_of(b).expect("coalition-stable is complete");
            RankDelta {
                boy: b,
                gs_girl,
                gs_rank: p.level_of(gs_girl) + 1,
                coalition_girl,
                coalition_rank: p.level_of(coalition_girl) + 1,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_lists_leave_gs_alone() {
        let inst = Instance::from_orders(&vec![vec![0, 1, 2]; 3], &vec![vec![0, 1, 2]; 3]).unwrap();
        assert!(compare_with_gs(&inst).iter().all(|d| d.delta() == 0));
        let r = coalition_stable_matching(&inst);
        assert_eq!(r.iterations.len(), 3);
    }

    #[test]
    fn iterations_partition_boys() {
        let inst = crate::model::gen_random(6, 3).unwrap();
        let r = coalition_stable_matching(&inst);
        let mut all: Vec<BoyId> = r.iterations.iter().flat_map(|it| it.fixed.iter().map(|p| p.0)).collect();
        all.sort();
        assert_eq!(all, inst.boys().collect::<Vec<_>>());
    }
}
