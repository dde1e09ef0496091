use super::{OracleError, OracleOptions};
use crate::model::Instance;
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// The game graph over elementary positions: which boy, if any, each girl
/// holds. A move lets every uncoupled boy propose to a girl of his choice at
/// once; each girl keeps the best of her holder and her proposers. Moves that
/// change nothing are not edges.
///
/// Positions forget the proposal history, so a boy may return to a girl
/// who refused him. That only adds edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameDag {
    /// `(n+1)^n` assignments of girls to a boy or vacancy.
    pub positions: usize,
    /// Positions that are perfect matchings, reachable or not.
    pub terminals: usize,
    pub reachable: usize,
    pub edges: usize,
    /// Reachable positions without a move.
    pub reachable_terminals: usize,
    /// Every reachable position without a move is a perfect matching.
    pub sinks_complete: bool,
    /// A topological order of the reachable graph exists.
    pub acyclic: bool,
}

/// `pos[g]` is the holder of girl `g`.
type Position = Vec<Option<usize>>;

fn is_perfect(pos: &Position) -> bool {
    let held: BTreeSet<usize> = pos.iter().flatten().copied().collect();
    held.len() == pos.len() && pos.iter().all(Option::is_some)
}

fn successors(inst: &Instance, rank: &[Vec<usize>], pos: &Position) -> BTreeSet<Position> {
    let n = pos.len();
    let coupled: BTreeSet<usize> = pos.iter().flatten().copied().collect();
    let free: Vec<usize> = (0..n).filter(|b| !coupled.contains(b)).collect();
    if free.is_empty() {
        return BTreeSet::new();
    }
    let mut out = BTreeSet::new();
    for targets in free.iter().map(|_| 0..inst.n()).multi_cartesian_product() {
        let mut next = pos.clone();
        for (&b, &g) in free.iter().zip(&targets) {
            if next[g].is_none_or(|h| rank[g][b] < rank[g][h]) {
                next[g] = Some(b);
            }
        }
        if &next != pos {
            out.insert(next);
        }
    }
    out
}

pub fn enumerate_game_dag(inst: &Instance, opts: &OracleOptions) -> Result<GameDag, OracleError> {
    let n = inst.n();
    if n > opts.max_dag_n {
        return Err(OracleError::CapExceeded { n, cap: opts.max_dag_n });
    }
    let rank: Vec<Vec<usize>> =
        inst.girls().map(|g| inst.boys().map(|b| inst.girl_prefs(g).position(b)).collect()).collect();

    let all: Vec<Position> = (0..n).map(|_| (0..=n).map(|h| h.checked_sub(1))).multi_cartesian_product().collect();
    let positions = all.len().max(1);
    let terminals = all.iter().filter(|p| is_perfect(p)).count();

    let start: Position = vec![None; n];
    let mut graph: BTreeMap<Position, BTreeSet<Position>> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(pos) = queue.pop_front() {
        if graph.contains_key(&pos) {
            continue;
        }
        let next = successors(inst, &rank, &pos);
        queue.extend(next.iter().filter(|p| !graph.contains_key(*p)).cloned());
        graph.insert(pos, next);
    }

    let edges = graph.values().map(BTreeSet::len).sum();
    let sinks: Vec<&Position> = graph.iter().filter(|(_, s)| s.is_empty()).map(|(p, _)| p).collect();

    // Kahn: the graph is acyclic iff every node gets removed.
    let mut indegree: BTreeMap<&Position, usize> = graph.keys().map(|p| (p, 0)).collect();
    for succ in graph.values() {
        for s in succ {
            *indegree.get_mut(s).expect("successors are explored") += 1;
        }
    }
    let mut ready: Vec<&Position> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&p, _)| p).collect();
    let mut removed = 0;
    while let Some(p) = ready.pop() {
        removed += 1;
        for s in &graph[p] {
            let d = indegree.get_mut(s).expect("successors are explored");
            *d -= 1;
            if *d == 0 {
                ready.push(s);
            }
        }
    }

    Ok(GameDag {
        positions,
        terminals,
        reachable: graph.len(),
        edges,
        reachable_terminals: sinks.len(),
        sinks_complete: sinks.iter().all(|p| is_perfect(p)),
        acyclic: removed == graph.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gen_random;

    #[test]
    fn terminal_counts_are_factorials() {
        for (n, fact) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
            let dag = enumerate_game_dag(&gen_random(n, 3).unwrap(), &OracleOptions::default()).unwrap();
            assert_eq!(dag.terminals, fact);
            assert_eq!(dag.positions, (n + 1).pow(n as u32));
            assert!(dag.acyclic);
            assert!(dag.sinks_complete);
        }
    }

    #[test]
    fn five_is_over_the_cap() {
        let e = enumerate_game_dag(&gen_random(5, 0).unwrap(), &OracleOptions::default()).unwrap_err();
        assert_eq!(e, OracleError::CapExceeded { n: 5, cap: 4 });
    }
}
