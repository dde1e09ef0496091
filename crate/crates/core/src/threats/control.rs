use crate::model::{AugmentedInstance, BoyId, GirlId, Instance, Matching, TieBreak};
use serde::Serialize;

/// Kuhn's augmenting paths over `adj[left]` lists of right indices.
pub(crate) fn kuhn(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !std::mem::replace(&mut seen[v], true) && owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut seen = vec![false; right];
    for u in 0..adj.len() {
        seen.fill(false);
        augment(u, adj, &mut seen, &mut owner);
    }
    let mut left = vec![None; adj.len()];
    for (v, u) in owner.into_iter().enumerate() {
        if let Some(u) = u {
            left[u] = Some(v);
        }
    }
    left
}

/// A maximum matching; `adjacency[b]` lists the girls boy `b` may take.
/// Deterministic for a fixed adjacency order.
pub fn max_bipartite_matching(adjacency: &[Vec<GirlId>], n: usize) -> Matching {
    let adj: Vec<Vec<usize>> = adjacency.iter().map(|gs| gs.iter().map(|g| g.0).collect()).collect();
    let pairs = kuhn(&adj, n).into_iter().enumerate().filter_map(|(b, g)| g.map(|g| (BoyId(b), GirlId(g))));
    Matching::from_pairs(n.max(adjacency.len()), pairs).expect("augmenting paths keep the matching injective")
}

/// Can boys `members` hold every girl of `girls` against `externals`?
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ControlQuery {
    pub members: Vec<BoyId>,
    pub girls: Vec<GirlId>,
    pub externals: Vec<BoyId>,
    /// Per boy, the lowest girl he will take.
    pub bottoms: Option<Vec<GirlId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Control {
    pub holds: bool,
    /// The worst-case assignment covering every girl, when `holds`.
    pub witness: Vec<(BoyId, GirlId)>,
}

/// Member `b` may take `g` if she is at or above his bottom and she prefers
/// him to every external boy.
fn may_hold(inst: &Instance, q: &ControlQuery, b: BoyId, g: GirlId) -> bool {
    q.bottoms.as_ref().is_none_or(|bt| inst.boy_prefs(b).at_or_above(g, bt[b.0]))
        && q.externals.iter().all(|&e| !inst.girl_prefers(g, e, b))
}

pub fn has_control(inst: &Instance, q: &ControlQuery) -> Control {
    if q.girls.len() > q.members.len() {
        return Control { holds: false, witness: Vec::new() };
    }
    let adj: Vec<Vec<usize>> = q
        .girls
        .iter()
        .map(|&g| (0..q.members.len()).filter(|&i| may_hold(inst, q, q.members[i], g)).collect())
        .collect();
    let cover = kuhn(&adj, q.members.len());
    if cover.iter().any(Option::is_none) {
        return Control { holds: false, witness: Vec::new() };
    }
    let mut witness: Vec<(BoyId, GirlId)> =
        cover.iter().zip(&q.girls).map(|(i, &g)| (q.members[i.expect("covered")], g)).collect();
    witness.sort();
    Control { holds: true, witness }
}

/// Longest prefix of `target`'s list (ties ascending) that `members` control
/// against him alone.
pub fn max_controlled_prefix(
    inst: &Instance,
    members: &[BoyId],
    target: BoyId,
    bottoms: Option<&[GirlId]>,
) -> Vec<GirlId> {
    let order = inst.proposal_order(target, TieBreak::AscendingId);
    let controls = |k: usize| {
        let q = ControlQuery {
            members: members.to_vec(),
            girls: order[..k].to_vec(),
            externals: vec![target],
            bottoms: bottoms.map(<[GirlId]>::to_vec),
        };
        has_control(inst, &q).holds
    };
    // Control of a prefix implies control of every shorter one.
    let (mut lo, mut hi) = (0, order.len().min(members.len()));
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if controls(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    order[..lo].to_vec()
}

/// A complete matching giving every boy his ult or better.
pub fn satisfiable_all(aug: &AugmentedInstance) -> Option<Matching> {
    let inst = &aug.base;
    let adjacency: Vec<Vec<GirlId>> =
        inst.boys().map(|b| inst.girls().filter(|&g| inst.boy_prefs(b).at_or_above(g, aug.ult(b))).collect()).collect();
    let m = max_bipartite_matching(&adjacency, inst.n());
    m.is_complete().then_some(m)
}
