use super::{OracleError, OracleOptions};
use crate::model::{BoyId, GirlId, Instance};
use crate::threats::{has_control, Coalition, ControlQuery};
use itertools::Itertools;
use serde::Serialize;
use std::collections::HashMap;

/// Play-level game for a coalition holding its promised girls `S`.
///
/// Externals strike first: a free external proposes to a girl of `S` who
/// prefers him to her holder. The coalition answers by moving ousted members
/// inside `S` until every member is coupled again; only then may the
/// externals strike again. Nobody proposes twice to the same girl. The
/// coalition wins if the externals run out of vetoes while it holds all of
/// `S`, and loses if a member is left with nowhere to go.
struct Game<'a> {
    inst: &'a Instance,
    girls: Vec<GirlId>,
    members: Vec<BoyId>,
    externals: Vec<BoyId>,
    memo: HashMap<(Vec<BoyId>, Vec<bool>), bool>,
}

impl Game<'_> {
    fn slot(&self, b: BoyId, s: usize) -> usize {
        b.0 * self.girls.len() + s
    }

    fn takes(&self, s: usize, b: BoyId, holder: BoyId) -> bool {
        self.inst.girl_prefers(self.girls[s], b, holder)
    }

    /// True if the coalition wins from here.
    fn solve(&mut self, holder: &[BoyId], proposed: &[bool]) -> bool {
        let key = (holder.to_vec(), proposed.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let free: Vec<BoyId> = self.members.iter().copied().filter(|m| !holder.contains(m)).collect();
        let result = if free.is_empty() {
            self.externals_move(holder, proposed)
        } else {
            self.coalition_moves(&free, holder, proposed)
        };
        self.memo.insert(key, result);
        result
    }

    fn coalition_moves(&mut self, free: &[BoyId], holder: &[BoyId], proposed: &[bool]) -> bool {
        for &m in free {
            for s in 0..self.girls.len() {
                let k = self.slot(m, s);
                if proposed[k] || !self.takes(s, m, holder[s]) {
                    continue;
                }
                let mut h = holder.to_vec();
                let mut p = proposed.to_vec();
                h[s] = m;
                p[k] = true;
                if self.solve(&h, &p) {
                    return true;
                }
            }
        }
        false
    }

    fn externals_move(&mut self, holder: &[BoyId], proposed: &[bool]) -> bool {
        for e in self.externals.clone() {
            for s in 0..self.girls.len() {
                let k = self.slot(e, s);
                if proposed[k] || !self.takes(s, e, holder[s]) {
                    continue;
                }
                let mut h = holder.to_vec();
                let mut p = proposed.to_vec();
                h[s] = e;
                p[k] = true;
                if !self.solve(&h, &p) {
                    return false;
                }
            }
        }
        true
    }
}

/// Can `coal` keep every promised girl against all external vetoes, with
/// its members only ever proposing among those girls?
pub fn undeterable_by_play(inst: &Instance, coal: &Coalition, opts: &OracleOptions) -> Result<bool, OracleError> {
    if inst.n() > opts.max_dag_n {
        return Err(OracleError::CapExceeded { n: inst.n(), cap: opts.max_dag_n });
    }
    let (members, girls): (Vec<BoyId>, Vec<GirlId>) = coal.pairs().unzip();
    let mut game = Game {
        inst,
        girls: girls.clone(),
        members: members.clone(),
        externals: coal.externals(inst).collect(),
        memo: HashMap::new(),
    };
    let mut proposed = vec![false; inst.n() * girls.len()];
    for (s, &m) in members.iter().enumerate() {
        proposed[game.slot(m, s)] = true;
    }
    Ok(game.solve(&members, &proposed))
}

/// A promise matching where the matching criterion and the play-level game
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlDivergence {
    pub coalition: Coalition,
    pub has_control: bool,
    pub undeterable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ControlCheck {
    /// Promise matchings examined.
    pub coalitions: usize,
    /// Per promise matching: control holds yet this particular matching
    /// falls to vetoes, or the reverse.
    pub divergences: Vec<ControlDivergence>,
    /// Boy and girl sets where control disagrees with "some promise
    /// matching survives in play".
    pub set_mismatches: Vec<(Vec<BoyId>, Vec<GirlId>)>,
}

/// Runs [`undeterable_by_play`] against the matching criterion for every
/// non-empty coalition of the instance.
///
/// The criterion only asks that a safe assignment exist; whether the
/// members can reach it from their promises is left to play. Divergences of
/// the first kind are therefore expected; set mismatches are not.
pub fn control_spot_check(inst: &Instance, opts: &OracleOptions) -> Result<ControlCheck, OracleError> {
    if inst.n() > opts.max_dag_n {
        return Err(OracleError::CapExceeded { n: inst.n(), cap: opts.max_dag_n });
    }
    let mut check = ControlCheck::default();
    for k in 1..=inst.n() {
        for members in inst.boys().combinations(k) {
            for girls in inst.girls().combinations(k) {
                let q = ControlQuery {
                    members: members.clone(),
                    girls: girls.clone(),
                    externals: inst.boys().filter(|b| !members.contains(b)).collect(),
                    bottoms: None,
                };
                let control = has_control(inst, &q).holds;
                let mut any_survives = false;
                for order in girls.iter().copied().permutations(k) {
                    let coal = Coalition::new(inst, members.iter().copied().zip(order)).expect("distinct girls");
                    let undeterable = undeterable_by_play(inst, &coal, opts)?;
                    any_survives |= undeterable;
                    check.coalitions += 1;
                    if control != undeterable {
                        check.divergences.push(ControlDivergence {
                            coalition: coal,
                            has_control: control,
                            undeterable,
                        });
                    }
                }
                if control != any_survives {
                    check.set_mismatches.push((members.clone(), girls.clone()));
                }
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vetoed_singleton_falls() {
        // Both girls prefer b1; b2 promised g1 has nowhere to go.
        let inst = Instance::from_orders(&[vec![0, 1], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap();
        let c = Coalition::new(&inst, [(BoyId(1), GirlId(0))]).unwrap();
        assert!(!undeterable_by_play(&inst, &c, &OracleOptions::default()).unwrap());
        let c = Coalition::new(&inst, [(BoyId(0), GirlId(0))]).unwrap();
        assert!(undeterable_by_play(&inst, &c, &OracleOptions::default()).unwrap());
    }

    #[test]
    fn safe_assignment_out_of_reach() {
        // b3 ousts b2 from g2; b1 could cover g2 but is busy at g1 and g1
        // will not take b2.
        let inst = Instance::from_orders(
            &[vec![2, 0, 1], vec![2, 1, 0], vec![2, 0, 1]],
            &[vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]],
        )
        .unwrap();
        let opts = OracleOptions::default();
        let promised = Coalition::new(&inst, [(BoyId(0), GirlId(0)), (BoyId(1), GirlId(1))]).unwrap();
        assert!(!undeterable_by_play(&inst, &promised, &opts).unwrap());
        let safe = Coalition::new(&inst, [(BoyId(0), GirlId(1)), (BoyId(1), GirlId(0))]).unwrap();
        assert!(undeterable_by_play(&inst, &safe, &opts).unwrap());
        let q = ControlQuery {
            members: vec![BoyId(0), BoyId(1)],
            girls: vec![GirlId(0), GirlId(1)],
            externals: vec![BoyId(2)],
            bottoms: None,
        };
        assert!(has_control(&inst, &q).holds);
        let check = control_spot_check(&inst, &opts).unwrap();
        assert!(check.divergences.iter().any(|d| d.coalition == promised));
        assert!(check.set_mismatches.is_empty());
    }

    #[test]
    fn grand_coalition_is_never_deterred() {
        let inst = crate::model::gen_random(3, 8).unwrap();
        let m = crate::engine::run_gale_shapley(&inst).final_matching;
        assert!(undeterable_by_play(&inst, &Coalition::from_matching(&m), &OracleOptions::default()).unwrap());
    }
}
