mod common;

use common::{boy, fixture, girl, matching};
use smp_core::coalition::coalition_stable_matching;
use smp_core::engine::{naive_profiles, run_gale_shapley, StaticProfile};
use smp_core::model::{gen_random, GirlId, TieBreak};
use smp_core::oracle::*;

#[test]
fn indifferent_boy_atlas_holds_both_plays() {
    let inst = fixture("tied_boy.txt");
    let atlas = enumerate_static_outcomes(&inst, ProfileSpace::All, &OracleOptions::default()).unwrap();
    assert_eq!(atlas.combinations(), 216);
    assert!(atlas.contains(&matching(&inst, "b1-g3, b2-g2, b3-g1")));
    assert!(atlas.contains(&matching(&inst, "b1-g3, b2-g1, b3-g2")));
}

#[test]
fn conservative_worst_case_is_the_gale_shapley_partner() {
    let opts = OracleOptions::default();
    for seed in 0..20 {
        let inst = gen_random(4, seed).unwrap();
        let gs = run_gale_shapley(&inst).final_matching;
        let atlas = enumerate_static_outcomes(&inst, ProfileSpace::Conservative, &opts).unwrap();
        for b in inst.boys() {
            let partner = gs.girl_of(b).unwrap();
            assert_eq!(worst_case_outcome(&inst, b, &opts).unwrap(), partner, "seed {seed}, {b:?}");
            // Nobody in a conservative atlas falls below his partner.
            assert!(inst.boy_prefs(b).at_or_above(partner, atlas.worst[b.0]), "seed {seed}, {b:?}");
        }
    }
}

#[test]
fn reduced_trading_instance_holds_b6_to_g3() {
    let inst = fixture("short_lists.txt");
    let keep_boys = ["b3", "b4", "b6", "b7"].map(|l| boy(&inst, l));
    let keep_girls = ["g2", "g3", "g5", "g6"].map(|l| girl(&inst, l));
    let sub = inst.restrict(&keep_boys, &keep_girls).unwrap();
    let b6 = sub.boys.iter().position(|&b| b == boy(&inst, "b6")).unwrap();
    let worst = worst_case_outcome(&sub.instance, smp_core::BoyId(b6), &OracleOptions::default()).unwrap();
    assert_eq!(sub.girls[worst.0], girl(&inst, "g3"));
    // The coalition-stable matching gives him the same girl.
    let cs = coalition_stable_matching(&inst).matching;
    assert_eq!(cs.girl_of(boy(&inst, "b6")), Some(girl(&inst, "g3")));
}

#[test]
fn game_graph_terminals() {
    let opts = OracleOptions::default();
    for (n, fact) in [(2, 2), (3, 6)] {
        let dag = enumerate_game_dag(&gen_random(n, 17).unwrap(), &opts).unwrap();
        assert_eq!(dag.terminals, fact);
        assert!(dag.acyclic && dag.sinks_complete);
        assert!(dag.reachable_terminals <= fact);
    }
}

#[test]
fn schedules_do_not_matter() {
    let inst = fixture("short_lists.txt");
    assert!(verify_schedule_invariance(&inst, &naive_profiles(&inst, TieBreak::AscendingId), 50, 1).unwrap());
    let lied = fixture("lying_boy_falsified.txt");
    let profiles = naive_profiles(&lied, TieBreak::AscendingId);
    assert!(verify_schedule_invariance(&lied, &profiles, 50, 2).unwrap());
    // Arbitrary truncated-free orders too.
    let inst = gen_random(6, 3).unwrap();
    let rev: Vec<StaticProfile> =
        inst.boys().map(|_| StaticProfile::new((0..6).rev().map(GirlId).collect(), 6).unwrap()).collect();
    assert!(verify_schedule_invariance(&inst, &rev, 50, 3).unwrap());
}

#[test]
fn control_criterion_against_play() {
    let opts = OracleOptions::default();
    let (mut total, mut reachability) = (0, 0);
    for seed in 0..30 {
        let inst = gen_random(2 + seed as usize % 3, seed).unwrap();
        let check = control_spot_check(&inst, &opts).unwrap();
        total += check.coalitions;
        assert!(check.set_mismatches.is_empty(), "seed {seed}: {:?}", check.set_mismatches);
        // A promise matching that survives play always has a safe assignment
        // behind it; the other way round needs reachability.
        assert!(check.divergences.iter().all(|d| d.has_control && !d.undeterable), "seed {seed}");
        reachability += check.divergences.len();
    }
    assert!(total > 2000);
    assert!(reachability > 0);
}
