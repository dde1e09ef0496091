use super::trace::{PlayElement, PlayTrace, Round};
use super::EngineError;
use crate::model::{BoyId, GirlId, Instance, Matching, TieBreak};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A boy's fixed proposal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticProfile(Vec<GirlId>);

impl StaticProfile {
    /// Any order without repeats; it need not name every girl.
    pub fn new(order: Vec<GirlId>, n: usize) -> Option<Self> {
        let mut seen = vec![false; n];
        for g in &order {
            if g.0 >= n || std::mem::replace(&mut seen[g.0], true) {
                return None;
            }
        }
        Some(StaticProfile(order))
    }

    pub fn order(&self) -> &[GirlId] {
        &self.0
    }
}

/// Order in which uncoupled boys get to propose.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Boy `i` opens round `i`; the sole uncoupled boy keeps proposing until
    /// boys `0..=i` are all coupled.
    #[default]
    Canonical,
    /// Every step a uniformly random uncoupled boy proposes (ChaCha8 stream).
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Record proposals the girl refuses. Refused elements take ids in the
    /// same sequence as accepted ones.
    pub record_refusals: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { record_refusals: true }
    }
}

/// Naive profiles: each boy's own list with ties flattened by `tie`.
pub fn naive_profiles(inst: &Instance, tie: TieBreak) -> Vec<StaticProfile> {
    inst.boys().map(|b| StaticProfile(inst.proposal_order(b, tie))).collect()
}

/// Naive play with ties broken by ascending girl id.
pub fn run_gale_shapley(inst: &Instance) -> PlayTrace {
    run_gale_shapley_with(inst, TieBreak::AscendingId, EngineOptions::default())
}

pub fn run_gale_shapley_with(inst: &Instance, tie: TieBreak, opts: EngineOptions) -> PlayTrace {
    let mut trace = run_static_with(inst, &naive_profiles(inst, tie), Schedule::Canonical, opts)
        .expect("naive profiles are complete permutations");
    trace.naive = true;
    trace
}

/// Naive play restricted to the given boys and girls: lists skip absent
/// girls and only present boys open rounds. Ids in the trace stay those of
/// `inst`.
pub fn run_gale_shapley_among(
    inst: &Instance,
    boys: &[BoyId],
    girls: &[GirlId],
    tie: TieBreak,
    opts: EngineOptions,
) -> PlayTrace {
    let mut present = vec![false; inst.n()];
    for g in girls {
        present[g.0] = true;
    }
    let mut active = vec![false; inst.n()];
    for b in boys {
        active[b.0] = true;
    }
    let profiles: Vec<StaticProfile> = inst
        .boys()
        .map(|b| {
            if active[b.0] {
                StaticProfile(inst.proposal_order(b, tie).into_iter().filter(|g| present[g.0]).collect())
            } else {
                StaticProfile(Vec::new())
            }
        })
        .collect();
    let mut trace = run_inner(inst, &profiles, Schedule::Canonical, opts, &active)
        .expect("restricted naive profiles cover every present girl");
    trace.naive = true;
    trace
}

pub fn run_static(inst: &Instance, profiles: &[StaticProfile], schedule: Schedule) -> Result<PlayTrace, EngineError> {
    run_static_with(inst, profiles, schedule, EngineOptions::default())
}

struct Play<'a> {
    inst: &'a Instance,
    profiles: &'a [StaticProfile],
    opts: EngineOptions,
    next: Vec<usize>,
    matching: Matching,
    elements: Vec<PlayElement>,
    temperature: Vec<Vec<Option<BoyId>>>,
    last_targeted: Vec<Option<usize>>,
    proposals: usize,
}

impl Play<'_> {
    /// One proposal by `b`; returns the boy left uncoupled (possibly `b`).
    fn propose(&mut self, b: BoyId) -> Result<Option<BoyId>, EngineError> {
        let order = self.profiles[b.0].order();
        let Some(&g) = order.get(self.next[b.0]) else {
            return Err(EngineError::ProfileExhausted(self.inst.boy_label(b)));
        };
        self.next[b.0] += 1;
        let seq = self.proposals;
        self.proposals += 1;
        self.last_targeted[g.0] = Some(seq);
        let holder = self.matching.boy_of(g);
        let accepted = holder.is_none_or(|h| self.inst.girl_prefers(g, b, h));
        if accepted || self.opts.record_refusals {
            self.elements.push(PlayElement {
                id: self.elements.len() + 1,
                seq,
                boy: b,
                girl: g,
                accepted,
                holder_before: holder,
            });
        }
        if accepted {
            self.matching.reassign(b, g);
            self.temperature[g.0].push(Some(b));
            Ok(holder)
        } else {
            Ok(Some(b))
        }
    }
}

/// Runs static profiles under a schedule.
pub fn run_static_with(
    inst: &Instance,
    profiles: &[StaticProfile],
    schedule: Schedule,
    opts: EngineOptions,
) -> Result<PlayTrace, EngineError> {
    let n = inst.n();
    if profiles.len() != n {
        return Err(EngineError::ProfileCount { expected: n, found: profiles.len() });
    }
    for (b, p) in profiles.iter().enumerate() {
        if StaticProfile::new(p.0.clone(), n).is_none() {
            return Err(EngineError::BadProfile(inst.boy_label(BoyId(b))));
        }
    }
    run_inner(inst, profiles, schedule, opts, &vec![true; n])
}

fn run_inner(
    inst: &Instance,
    profiles: &[StaticProfile],
    schedule: Schedule,
    opts: EngineOptions,
    active: &[bool],
) -> Result<PlayTrace, EngineError> {
    let n = inst.n();
    let mut play = Play {
        inst,
        profiles,
        opts,
        next: vec![0; n],
        matching: Matching::empty(n),
        elements: Vec::new(),
        temperature: vec![vec![None]; n],
        last_targeted: vec![None; n],
        proposals: 0,
    };
    let mut rounds = Vec::new();
    match schedule {
        Schedule::Canonical => {
            for opener in inst.boys().filter(|b| active[b.0]) {
                let start = play.elements.len();
                let mut free = Some(opener);
                while let Some(b) = free {
                    free = play.propose(b)?;
                }
                rounds.push(Round { opener, elements: start..play.elements.len() });
            }
        }
        Schedule::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut free: Vec<BoyId> = inst.boys().filter(|b| active[b.0]).collect();
            while !free.is_empty() {
                let i = rng.gen_range(0..free.len() as u32) as usize;
                let b = free.swap_remove(i);
                if let Some(left) = play.propose(b)? {
                    free.push(left);
                }
            }
        }
    }
    Ok(PlayTrace {
        base: inst.base(),
        rounds,
        elements: play.elements,
        final_matching: play.matching,
        temperature: play.temperature,
        last_targeted: play.last_targeted,
        proposal_count: play.proposals,
        naive: false,
        refusals_recorded: opts.record_refusals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair() {
        let inst = Instance::from_orders(&[vec![0]], &[vec![0]]).unwrap();
        let t = run_gale_shapley(&inst);
        assert_eq!(t.elements.len(), 1);
        assert_eq!(t.final_matching.girl_of(BoyId(0)), Some(GirlId(0)));
    }

    #[test]
    fn exhausted_profile_is_an_error() {
        let inst = Instance::from_orders(&[vec![0, 1], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap();
        let profiles =
            vec![StaticProfile::new(vec![GirlId(0)], 2).unwrap(), StaticProfile::new(vec![GirlId(0)], 2).unwrap()];
        assert!(matches!(run_static(&inst, &profiles, Schedule::Canonical), Err(EngineError::ProfileExhausted(_))));
    }

    #[test]
    fn refusals_can_be_skipped() {
        let inst = Instance::from_orders(&[vec![0, 1], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap();
        let full = run_gale_shapley(&inst);
        let terse = run_gale_shapley_with(&inst, TieBreak::AscendingId, EngineOptions { record_refusals: false });
        assert_eq!(full.elements.len(), 3);
        assert_eq!(terse.elements.len(), 2);
        assert_eq!(full.final_matching, terse.final_matching);
        assert_eq!(terse.proposal_count, 3);
    }
}
