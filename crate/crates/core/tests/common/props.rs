//! Property checks shared by the proptest suite and the acceptance run.
//! Each returns a description of the first violation.

use itertools::Itertools;
use smp_core::coalition::coalition_stable_matching;
use smp_core::engine::{hopeless_pairs, naive_profiles, run_gale_shapley};
use smp_core::model::{BoyId, GirlId, Instance, TieBreak};
use smp_core::oracle::{enumerate_game_dag, verify_schedule_invariance, worst_case_outcome, OracleOptions};

pub type Check = Result<(), String>;

/// Girl per boy for every perfect matching that no pair blocks, by brute
/// force over all permutations.
pub fn stable_matchings(inst: &Instance) -> Vec<Vec<GirlId>> {
    let n = inst.n();
    (0..n)
        .map(GirlId)
        .permutations(n)
        .filter(|m| {
            let boy_of = |g: GirlId| BoyId(m.iter().position(|&x| x == g).unwrap());
            !inst
                .boys()
                .any(|b| inst.girls().any(|g| inst.boy_prefers(b, g, m[b.0]) && inst.girl_prefers(g, b, boy_of(g))))
        })
        .collect()
}

pub fn gs_is_stable(inst: &Instance) -> Check {
    let m = run_gale_shapley(inst).final_matching;
    let row: Vec<GirlId> = inst.boys().map(|b| m.girl_of(b).unwrap()).collect();
    if stable_matchings(inst).contains(&row) {
        Ok(())
    } else {
        Err(format!("{m:?} is not among the stable matchings"))
    }
}

pub fn gs_is_man_optimal(inst: &Instance) -> Check {
    let m = run_gale_shapley(inst).final_matching;
    for s in stable_matchings(inst) {
        for b in inst.boys() {
            if inst.boy_prefers(b, s[b.0], m.girl_of(b).unwrap()) {
                return Err(format!("{b:?} does better in stable {s:?}"));
            }
        }
    }
    Ok(())
}

pub fn schedules_agree(inst: &Instance, seed: u64) -> Check {
    let p = naive_profiles(inst, TieBreak::AscendingId);
    match verify_schedule_invariance(inst, &p, 50, seed) {
        Ok(true) => Ok(()),
        Ok(false) => Err("two schedules disagree".into()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn coalition_dominates_gs(inst: &Instance) -> Check {
    let gs = run_gale_shapley(inst).final_matching;
    let cs = coalition_stable_matching(inst).matching;
    for b in inst.boys() {
        let (g, c) = (gs.girl_of(b).unwrap(), cs.girl_of(b).unwrap());
        if inst.boy_prefers(b, g, c) {
            return Err(format!("{b:?} gets {c:?} below his partner {g:?}"));
        }
    }
    Ok(())
}

pub fn worst_case_is_gs_partner(inst: &Instance) -> Check {
    let gs = run_gale_shapley(inst).final_matching;
    for b in inst.boys() {
        let w = worst_case_outcome(inst, b, &OracleOptions::default()).map_err(|e| e.to_string())?;
        if Some(w) != gs.girl_of(b) {
            return Err(format!("{b:?}: worst {w:?}, partner {:?}", gs.girl_of(b)));
        }
    }
    Ok(())
}

pub fn hopeless_exists(inst: &Instance) -> Check {
    match hopeless_pairs(&run_gale_shapley(inst)) {
        Ok(h) if !h.is_empty() => Ok(()),
        Ok(_) => Err("no hopeless pair".into()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn proposals_within_square(inst: &Instance) -> Check {
    let count = run_gale_shapley(inst).proposal_count;
    let n = inst.n();
    if count <= n * n {
        Ok(())
    } else {
        Err(format!("{count} proposals for n = {n}"))
    }
}

pub fn dag_terminals_are_factorial(inst: &Instance) -> Check {
    let dag = enumerate_game_dag(inst, &OracleOptions::default()).map_err(|e| e.to_string())?;
    let fact: usize = (1..=inst.n()).product();
    if dag.terminals == fact && dag.acyclic && dag.sinks_complete {
        Ok(())
    } else {
        Err(format!("{dag:?}"))
    }
}
