use super::control::{kuhn, max_controlled_prefix};
use super::Coalition;
use crate::model::{BoyId, GirlId, Instance};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Feasible,
    /// The search ran out without a coalition. Not a proof of infeasibility.
    NotFound,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrathOptions {
    /// Calls allowed before giving up.
    pub budget: usize,
    /// Per boy, the lowest girl he will occupy when punishing.
    pub bottoms: Option<Vec<GirlId>>,
}

impl Default for WrathOptions {
    fn default() -> Self {
        WrathOptions { budget: 1_000_000, bottoms: None }
    }
}

/// Floors of admitted boys and the order they joined in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WrathState {
    pub lower: Vec<Option<GirlId>>,
    pub order: Vec<BoyId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    /// The coalition at the moment of success; otherwise the largest one
    /// whose floors could all be met.
    pub state: WrathState,
    /// Externally stable promise matching, when feasible.
    pub witness: Option<Coalition>,
    pub nodes: usize,
}

struct BudgetExceeded;

struct Search<'a> {
    inst: &'a Instance,
    opts: &'a WrathOptions,
    state: WrathState,
    deepest: WrathState,
    /// Floor vectors already explored without success.
    failed: HashSet<Vec<Option<GirlId>>>,
    nodes: usize,
}

impl Search<'_> {
    /// Assigns every admitted boy a girl at or above his floor; with
    /// `guarded`, only girls no outsider can take from him.
    fn floor_matching(&self, guarded: bool) -> Option<Vec<(BoyId, GirlId)>> {
        let inst = self.inst;
        let lower = &self.state.lower;
        let members = &self.state.order;
        let adj: Vec<Vec<usize>> = members
            .iter()
            .map(|&b| {
                let floor = lower[b.0].expect("admitted");
                inst.girls()
                    .filter(|&g| inst.boy_prefs(b).at_or_above(g, floor))
                    .filter(|&g| !guarded || inst.boys().all(|e| lower[e.0].is_some() || !inst.girl_prefers(g, e, b)))
                    .map(|g| g.0)
                    .collect()
            })
            .collect();
        let m = kuhn(&adj, inst.n());
        m.iter().zip(members).map(|(g, &b)| g.map(|g| (b, GirlId(g)))).collect::<Option<Vec<_>>>()
    }

    fn admit(&mut self, b: BoyId, g: GirlId) -> Result<Option<Vec<(BoyId, GirlId)>>, BudgetExceeded> {
        if self.nodes == self.opts.budget {
            return Err(BudgetExceeded);
        }
        self.nodes += 1;
        self.state.lower[b.0] = Some(g);
        self.state.order.push(b);
        let found = self.expand()?;
        if found.is_none() {
            self.failed.insert(self.state.lower.clone());
            self.state.lower[b.0] = None;
            self.state.order.pop();
        }
        Ok(found)
    }

    fn expand(&mut self) -> Result<Option<Vec<(BoyId, GirlId)>>, BudgetExceeded> {
        if self.failed.contains(&self.state.lower) || self.floor_matching(false).is_none() {
            return Ok(None);
        }
        if self.state.order.len() > self.deepest.order.len() {
            self.deepest = self.state.clone();
        }
        if let Some(m) = self.floor_matching(true) {
            return Ok(Some(m));
        }
        let externals: Vec<BoyId> = self.inst.boys().filter(|b| self.state.lower[b.0].is_none()).collect();
        for b1 in externals {
            let members = self.state.order.clone();
            let sx = max_controlled_prefix(self.inst, &members, b1, self.opts.bottoms.as_deref());
            // Nothing to threaten him with: no offer.
            let Some(&g1) = sx.last() else { continue };
            if let Some(m) = self.admit(b1, g1)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// Searches for a coalition that secures `g` or better for `b`, growing it
/// one threatened boy at a time. Outsiders are tried in ascending id order.
pub fn is_outcome_feasible(inst: &Instance, b: BoyId, g: GirlId, opts: &WrathOptions) -> FeasibilityReport {
    let empty = WrathState { lower: vec![None; inst.n()], order: Vec::new() };
    let mut search = Search { inst, opts, state: empty.clone(), deepest: empty, failed: HashSet::new(), nodes: 0 };
    let (verdict, witness) = match search.admit(b, g) {
        Ok(Some(m)) => (Verdict::Feasible, Some(Coalition::new(inst, m).expect("matching is injective"))),
        Ok(None) => (Verdict::NotFound, None),
        Err(BudgetExceeded) => (Verdict::BudgetExceeded, None),
    };
    let state = if verdict == Verdict::Feasible { search.state } else { search.deepest };
    FeasibilityReport { verdict, state, witness, nodes: search.nodes }
}
