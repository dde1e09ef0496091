//! Trading cycles over a matching and the top-trading-cycles improvement.

use crate::model::{BoyId, GirlId, Instance, Matching, ModelError};
use serde::Serialize;

/// A cyclic exchange: each boy leaves `from` for `to`, and the last boy's
/// `to` is the first boy's `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TradingCycle {
    pub steps: Vec<CycleStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CycleStep {
    pub boy: BoyId,
    pub from: GirlId,
    pub to: GirlId,
}

impl TradingCycle {
    /// `g3|b3->g2|b5->g3` style text.
    pub fn render(&self, inst: &Instance, arrow: &str) -> String {
        let mut s = inst.girl_label(self.steps[0].from);
        for st in &self.steps {
            s.push_str(&format!("|{}{}{}", inst.boy_label(st.boy), arrow, inst.girl_label(st.to)));
        }
        s
    }

    /// The same cycle listed from `boy`'s step, if he is on it.
    pub fn rotated_to(&self, boy: BoyId) -> Option<TradingCycle> {
        let k = self.steps.iter().position(|s| s.boy == boy)?;
        let mut steps = self.steps.clone();
        steps.rotate_left(k);
        Some(TradingCycle { steps })
    }
}

/// Every elementary cycle in the graph where each boy points at the holders
/// of the girls he strictly prefers to his own; each cycle starts at its
/// smallest boy. Stops after `limit` cycles.
pub fn find_trading_cycles_limited(
    inst: &Instance,
    m: &Matching,
    limit: usize,
) -> Result<Vec<TradingCycle>, ModelError> {
    if !m.is_complete() || m.n() != inst.n() {
        return Err(ModelError::IncompleteMatching);
    }
    let n = inst.n();
    let own = |b: BoyId| m.girl_of(b).expect("complete");
    let succ: Vec<Vec<(BoyId, GirlId)>> = inst
        .boys()
        .map(|b| {
            inst.boy_prefs(b)
                .order()
                .iter()
                .copied()
                .filter(|&g| inst.boy_prefers(b, g, own(b)))
                .map(|g| (m.boy_of(g).expect("complete"), g))
                .collect()
        })
        .collect();
    let mut cycles = Vec::new();
    // Depth-first search from each start over boys with larger ids only, so
    // every elementary cycle is found exactly once.
    for start in 0..n {
        let mut on_path = vec![false; n];
        // Frames hold a boy and the index one past the edge being explored.
        let mut stack: Vec<(BoyId, usize)> = vec![(BoyId(start), 0)];
        on_path[start] = true;
        while let Some(&mut (b, ref mut i)) = stack.last_mut() {
            if *i == succ[b.0].len() {
                on_path[b.0] = false;
                stack.pop();
                continue;
            }
            let (next, _) = succ[b.0][*i];
            *i += 1;
            if next.0 == start {
                let steps =
                    stack.iter().map(|&(boy, k)| CycleStep { boy, from: own(boy), to: succ[boy.0][k - 1].1 }).collect();
                cycles.push(TradingCycle { steps });
                if cycles.len() >= limit {
                    return Ok(cycles);
                }
            } else if next.0 > start && !on_path[next.0] {
                on_path[next.0] = true;
                stack.push((next, 0));
            }
        }
    }
    Ok(cycles)
}

/// All elementary trading cycles (capped at one million).
pub fn find_trading_cycles(inst: &Instance, m: &Matching) -> Result<Vec<TradingCycle>, ModelError> {
    find_trading_cycles_limited(inst, m, 1_000_000)
}

/// Top trading cycles seeded with `m`: each remaining boy points at the
/// holder of his best remaining girl (his own when she is among the best);
/// cycles trade and leave; repeat.
pub fn ttc_improve(inst: &Instance, m: &Matching) -> Result<Matching, ModelError> {
    if !m.is_complete() || m.n() != inst.n() {
        return Err(ModelError::IncompleteMatching);
    }
    let n = inst.n();
    let mut owner: Vec<BoyId> = inst.girls().map(|g| m.boy_of(g).expect("complete")).collect();
    let mut holds: Vec<GirlId> = inst.boys().map(|b| m.girl_of(b).expect("complete")).collect();
    let mut active = vec![true; n];
    let mut result = Matching::empty(n);
    let mut left = n;
    while left > 0 {
        let target: Vec<Option<GirlId>> = inst
            .boys()
            .map(|b| {
                if !active[b.0] {
                    return None;
                }
                let p = inst.boy_prefs(b);
                let best = p
                    .order()
                    .iter()
                    .copied()
                    .filter(|g| active[owner[g.0].0])
                    .min_by_key(|&g| p.level_of(g))
                    .expect("a boy still holds a girl");
                if p.level_of(best) == p.level_of(holds[b.0]) {
                    Some(holds[b.0])
                } else {
                    Some(best)
                }
            })
            .collect();
        // Walk pointers from each unvisited boy to find the cycles of the
        // functional graph.
        let mut state = vec![0u8; n];
        let mut trades: Vec<(BoyId, GirlId)> = Vec::new();
        for s in inst.boys().filter(|b| active[b.0]) {
            let mut path = Vec::new();
            let mut b = s;
            while state[b.0] == 0 {
                state[b.0] = 1;
                path.push(b);
                b = owner[target[b.0].expect("active").0];
            }
            if state[b.0] == 1 {
                let pos = path.iter().position(|&x| x == b).expect("on path");
                trades.extend(path[pos..].iter().map(|&x| (x, target[x.0].expect("active"))));
            }
            for x in path {
                state[x.0] = 2;
            }
        }
        for &(b, g) in &trades {
            result.pair(b, g).expect("cycles are disjoint");
            active[b.0] = false;
            left -= 1;
        }
        for &(b, g) in &trades {
            owner[g.0] = b;
            holds[b.0] = g;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_gale_shapley;

    #[test]
    fn first_choices_have_no_cycles() {
        let inst = Instance::from_orders(&[vec![0, 1], vec![1, 0]], &[vec![0, 1], vec![0, 1]]).unwrap();
        let m = run_gale_shapley(&inst).final_matching;
        assert!(find_trading_cycles(&inst, &m).unwrap().is_empty());
        assert_eq!(ttc_improve(&inst, &m).unwrap(), m);
    }

    #[test]
    fn swap_is_found() {
        let inst = Instance::from_orders(&[vec![0, 1], vec![1, 0]], &[vec![1, 0], vec![0, 1]]).unwrap();
        let m = Matching::from_pairs(2, [(BoyId(0), GirlId(1)), (BoyId(1), GirlId(0))]).unwrap();
        let cycles = find_trading_cycles(&inst, &m).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].render(&inst, "->"), "g2|b1->g1|b2->g2");
        let better = ttc_improve(&inst, &m).unwrap();
        assert_eq!(better.girl_of(BoyId(0)), Some(GirlId(0)));
    }
}
