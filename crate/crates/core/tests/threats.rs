mod common;

use common::{boy, fixture, girl, pairs};
use smp_core::model::{AugmentedInstance, BoyId, GirlId, Instance};
use smp_core::threats::*;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn boys(inst: &Instance, labels: &str) -> Vec<BoyId> {
    labels.split_whitespace().map(|l| boy(inst, l)).collect()
}

fn girls(inst: &Instance, labels: &str) -> Vec<GirlId> {
    labels.split_whitespace().map(|l| girl(inst, l)).collect()
}

fn all_but<T: Copy + PartialEq>(all: impl Iterator<Item = T>, drop: &[T]) -> Vec<T> {
    all.filter(|x| !drop.contains(x)).collect()
}

#[test]
fn everyone_but_b1_controls_all_girls_but_g8() {
    let inst = fixture("ten_boys.txt");
    let b1 = boys(&inst, "b1");
    let q = ControlQuery {
        members: all_but(inst.boys(), &b1),
        girls: all_but(inst.girls(), &girls(&inst, "g8")),
        externals: b1.clone(),
        bottoms: None,
    };
    let c = has_control(&inst, &q);
    assert!(c.holds);
    assert_eq!(c.witness.len(), 9);
    // With g8 added, b1 holds her against everyone.
    let q = ControlQuery { girls: inst.girls().collect(), ..q };
    assert!(!has_control(&inst, &q).holds);
}

#[test]
fn b4_controls_g4_and_g10_only_one_at_a_time() {
    let inst = fixture("ten_boys.txt");
    let b4 = boys(&inst, "b4");
    let query = |gs: &str| ControlQuery {
        members: b4.clone(),
        girls: girls(&inst, gs),
        externals: all_but(inst.boys(), &b4),
        bottoms: None,
    };
    assert!(has_control(&inst, &query("g4")).holds);
    assert!(has_control(&inst, &query("g10")).holds);
    assert!(!has_control(&inst, &query("g4 g10")).holds);
}

#[test]
fn everyone_controls_everything_without_externals() {
    let inst = fixture("ten_boys.txt");
    let q = ControlQuery { members: inst.boys().collect(), girls: inst.girls().collect(), ..Default::default() };
    assert!(has_control(&inst, &q).holds);
}

#[test]
fn b1_is_pushed_down_to_g8() {
    let inst = fixture("ten_boys.txt");
    let members = all_but(inst.boys(), &boys(&inst, "b1"));
    let sx = max_controlled_prefix(&inst, &members, boy(&inst, "b1"), None);
    assert_eq!(sx, girls(&inst, "g1 g3 g6"));
}

#[test]
fn b4_b9_b10_outsiders_leave_seven_girls_controlled() {
    let inst = fixture("ten_boys.txt");
    let outsiders = boys(&inst, "b4 b9 b10");
    let members = all_but(inst.boys(), &outsiders);
    let held = girls(&inst, "g1 g2 g3 g5 g6 g7 g8");
    let q = ControlQuery { members: members.clone(), girls: held.clone(), externals: outsiders, bottoms: None };
    assert!(has_control(&inst, &q).holds);

    // Every promise matching of the seven boys onto the seven girls; keep
    // the externally stable ones.
    let mut stable = Vec::new();
    let mut perm: Vec<usize> = (0..7).collect();
    permute(&mut perm, 0, &mut |p| {
        let c = Coalition::new(&inst, members.iter().zip(p).map(|(&b, &i)| (b, held[i]))).unwrap();
        if is_externally_stable(&inst, &c) {
            stable.push(c);
        }
    });
    assert!(!stable.is_empty());
    // Either the threat play's outcome for these boys, or b1 keeps g1 and
    // b2 drops to g8.
    let as_sets: BTreeSet<BTreeSet<(BoyId, GirlId)>> = stable.iter().map(|c| c.pairs().collect()).collect();
    let threat = pairs(&inst, "b1-g8, b2-g1, b3-g2, b5-g3, b6-g5, b7-g6, b8-g7");
    let other = pairs(&inst, "b1-g1, b2-g8, b3-g2, b5-g3, b6-g5, b7-g6, b8-g7");
    assert_eq!(as_sets, BTreeSet::from([threat.into_iter().collect(), other.into_iter().collect()]));
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

#[test]
fn ultimatums_on_g1_clash() {
    let inst = fixture("ten_boys.txt");
    let (b1, b4) = (boy(&inst, "b1"), boy(&inst, "b4"));
    let with = |u1: &str, u4: &str| {
        let mut aug = AugmentedInstance::new(inst.clone());
        aug.set_ult(b1, girl(&inst, u1)).unwrap();
        aug.set_ult(b4, girl(&inst, u4)).unwrap();
        satisfiable_all(&aug)
    };
    assert!(with("g1", "g1").is_none());
    let m = with("g1", "g10").unwrap();
    assert_eq!((m.girl_of(b1), m.girl_of(b4)), (Some(girl(&inst, "g1")), Some(girl(&inst, "g10"))));
    let m = with("g3", "g1").unwrap();
    assert_eq!((m.girl_of(b1), m.girl_of(b4)), (Some(girl(&inst, "g3")), Some(girl(&inst, "g1"))));
}

#[test]
fn b4_can_secure_g1() {
    let inst = fixture("ten_boys.txt");
    let start = Instant::now();
    let r = is_outcome_feasible(&inst, boy(&inst, "b4"), girl(&inst, "g1"), &WrathOptions::default());
    assert!(start.elapsed() < Duration::from_secs(60));
    assert_eq!(r.verdict, Verdict::Feasible);
    assert_eq!(r.state.order[0], boy(&inst, "b4"));
    let w = r.witness.unwrap();
    assert!(is_externally_stable(&inst, &w));
    assert_eq!(w.promised(boy(&inst, "b4")), Some(girl(&inst, "g1")));
    // Every boy joins; the promise matching is the cooperation outcome.
    assert_eq!(w.len(), 10);
    let q = pairs(&inst, "b1-g3, b2-g2, b3-g9, b4-g1, b5-g5, b6-g6, b7-g7, b8-g8, b9-g10, b10-g4");
    assert_eq!(w.pairs().collect::<Vec<_>>().iter().collect::<BTreeSet<_>>(), q.iter().collect());
}

#[test]
fn b1_cannot_secure_g1() {
    let inst = fixture("ten_boys.txt");
    let start = Instant::now();
    let r = is_outcome_feasible(&inst, boy(&inst, "b1"), girl(&inst, "g1"), &WrathOptions::default());
    assert!(start.elapsed() < Duration::from_secs(60));
    assert_eq!(r.verdict, Verdict::NotFound);
    assert!(r.witness.is_none());
    let alliance: BTreeSet<BoyId> = r.state.order.iter().copied().collect();
    assert_eq!(alliance, boys(&inst, "b1 b3 b6 b8 b7 b5 b2").into_iter().collect());
}

#[test]
fn accomplices_of_the_trading_cycle() {
    let inst = fixture("short_lists.txt");
    let ttc = Coalition::new(&inst, pairs(&inst, "b3-g5, b4-g3, b7-g2")).unwrap();
    let expected: BTreeSet<BoyId> = boys(&inst, "b2 b5 b6").into_iter().collect();
    assert_eq!(direct_vetoers(&inst, &ttc), expected);
    assert_eq!(legitimate_vetoers_vs_gs(&inst, &ttc), expected);
    let v = vetoes(&inst, &ttc);
    assert!(v.contains(&Veto { vetoer: boy(&inst, "b6"), girl: girl(&inst, "g3"), ousted: boy(&inst, "b4") }));

    // The alternative coalition needs only b2 and b5; b4 and b7 hold no veto.
    let alt = Coalition::new(&inst, pairs(&inst, "b3-g5, b6-g3, b7-g6")).unwrap();
    let legit = legitimate_vetoers_vs_gs(&inst, &alt);
    assert_eq!(legit, boys(&inst, "b2 b5").into_iter().collect());
    let full = Coalition::new(&inst, pairs(&inst, "b6-g3, b4-g2, b7-g6, b3-g5, b1-g1, b2-g7, b5-g4")).unwrap();
    assert!(direct_vetoers(&inst, &full).is_empty());
}

#[test]
fn b4_alone_at_g2_is_safe() {
    let inst = fixture("short_lists.txt");
    let c = Coalition::new(&inst, pairs(&inst, "b4-g2")).unwrap();
    assert!(direct_vetoers(&inst, &c).is_empty());
}

#[test]
fn budget_exceeded_is_not_not_found() {
    let inst = fixture("ten_boys.txt");
    let opts = WrathOptions { budget: 5, bottoms: None };
    let r = is_outcome_feasible(&inst, boy(&inst, "b1"), girl(&inst, "g1"), &opts);
    assert_eq!(r.verdict, Verdict::BudgetExceeded);
}

#[test]
fn bottoms_shrink_the_threat() {
    let inst = fixture("ten_boys.txt");
    let members = all_but(inst.boys(), &boys(&inst, "b1"));
    // Nobody occupies anything below his own first choice.
    let firsts: Vec<GirlId> = inst.boys().map(|b| inst.boy_prefs(b).first()).collect();
    let sx = max_controlled_prefix(&inst, &members, boy(&inst, "b1"), Some(&firsts));
    assert!(sx.len() < 3);
}
