use super::play::{ConcurrentPlay, PlayEvent};
use super::strategy::StrategySet;
use super::DynamicError;
use crate::model::{BoyId, GirlId, Id, Instance, Matching, TieBreak};
use std::collections::BTreeMap;

/// What every boy can see before choosing his next proposal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    /// Per girl, the boy she holds.
    pub holder: Vec<Option<BoyId>>,
    /// Completed steps.
    pub history: Vec<Step>,
    /// `proposed[b][g]`: boy `b` has proposed to girl `g`.
    pub proposed: Vec<Vec<bool>>,
}

impl GameState {
    pub fn new(n: usize) -> Self {
        GameState { holder: vec![None; n], history: Vec::new(), proposed: vec![vec![false; n]; n] }
    }

    /// Index of the step about to be played.
    pub fn step(&self) -> usize {
        self.history.len()
    }

    pub fn is_coupled(&self, b: BoyId) -> bool {
        self.holder.contains(&Some(b))
    }
}

/// One girl's decision within a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub girl: GirlId,
    /// Ascending.
    pub proposers: Vec<BoyId>,
    pub before: Option<BoyId>,
    pub after: BoyId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub time: usize,
    /// Ascending by boy.
    pub proposals: Vec<(BoyId, GirlId)>,
    /// Ascending by girl.
    pub outcomes: Vec<Resolution>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcurrentTrace {
    pub base: usize,
    pub steps: Vec<Step>,
    pub final_matching: Matching,
    /// Per girl, her holders in order, starting from vacant.
    pub temperature: Vec<Vec<Option<BoyId>>>,
}

impl ConcurrentTrace {
    pub fn proposal_count(&self) -> usize {
        self.steps.iter().map(|s| s.proposals.len()).sum()
    }

    pub fn to_play(&self) -> ConcurrentPlay {
        let events = self
            .steps
            .iter()
            .flat_map(|s| {
                s.outcomes.iter().map(move |r| PlayEvent {
                    time: s.time,
                    line: 0,
                    proposers: r.proposers.clone(),
                    girl: r.girl,
                    winner: r.after,
                })
            })
            .collect();
        ConcurrentPlay { base: self.base, events }
    }
}

/// Plays every step until all boys are coupled. Boys without a script, or
/// whose rules name no fresh girl, go down their own list (ties ascending).
pub fn run_dynamic(inst: &Instance, strategies: &StrategySet) -> Result<ConcurrentTrace, DynamicError> {
    let n = inst.n();
    let naive: Vec<Vec<GirlId>> = inst.boys().map(|b| inst.proposal_order(b, TieBreak::AscendingId)).collect();
    let mut state = GameState::new(n);
    let mut temperature = vec![vec![None]; n];
    loop {
        let uncoupled: Vec<BoyId> = inst.boys().filter(|&b| !state.is_coupled(b)).collect();
        if uncoupled.is_empty() {
            break;
        }
        let mut proposals = Vec::with_capacity(uncoupled.len());
        for b in uncoupled {
            let g = strategies
                .get(b)
                .and_then(|s| s.scripted(b, &state))
                .or_else(|| naive[b.0].iter().copied().find(|g| !state.proposed[b.0][g.0]))
                .ok_or_else(|| DynamicError::StrategyExhausted(inst.boy_label(b)))?;
            proposals.push((b, g));
        }
        let mut by_girl: BTreeMap<GirlId, Vec<BoyId>> = BTreeMap::new();
        for &(b, g) in &proposals {
            state.proposed[b.0][g.0] = true;
            by_girl.entry(g).or_default().push(b);
        }
        let outcomes: Vec<Resolution> = by_girl
            .into_iter()
            .map(|(g, proposers)| {
                let before = state.holder[g.0];
                let prefs = inst.girl_prefs(g);
                let after = proposers
                    .iter()
                    .chain(&before)
                    .copied()
                    .min_by_key(|&b| prefs.position(b))
                    .expect("at least one proposer");
                Resolution { girl: g, proposers, before, after }
            })
            .collect();
        for r in &outcomes {
            if Some(r.after) != r.before {
                state.holder[r.girl.0] = Some(r.after);
                temperature[r.girl.0].push(Some(r.after));
            }
        }
        let time = state.step();
        state.history.push(Step { time, proposals, outcomes });
    }
    let pairs = state.holder.iter().enumerate().filter_map(|(g, b)| b.map(|b| (b, GirlId(g))));
    let final_matching = Matching::from_pairs(n, pairs).expect("each boy holds at most one girl");
    Ok(ConcurrentTrace { base: inst.base(), steps: state.history, final_matching, temperature })
}

/// `Step t: b1, b4→g1(b1); b2→g2` lines; the winner is shown unless the
/// sole proposer took a vacant girl. Parses back with `parse_play`.
pub fn format_concurrent(trace: &ConcurrentTrace, ascii: bool) -> String {
    let arrow = if ascii { "->" } else { "→" };
    let base = trace.base;
    let mut out = String::new();
    for s in &trace.steps {
        let parts: Vec<String> = s
            .outcomes
            .iter()
            .map(|r| {
                let boys: Vec<String> = r.proposers.iter().map(|b| b.label(base)).collect();
                let mut e = format!("{}{}{}", boys.join(", "), arrow, r.girl.label(base));
                if r.before.is_some() || r.proposers.len() > 1 {
                    e.push_str(&format!("({})", r.after.label(base)));
                }
                e
            })
            .collect();
        out.push_str(&format!("Step {}: {}\n", s.time, parts.join("; ")));
    }
    out
}

/// Same proposals at the same time indices with the same winners.
pub fn replay_matches(trace: &ConcurrentTrace, play: &ConcurrentPlay) -> bool {
    trace.to_play().normalized() == play.normalized()
}
