//! Deferred acceptance with quotes: a boy offers a girl a price for the
//! match, and a contested girl compares boys by quality net of price.
//!
//! An uncontested proposal quotes the girl's full budget. When a second boy
//! arrives, both contenders drop to their reserve quote (the incumbent only
//! if that is strictly lower than what he already quoted) and the girl keeps
//! the higher score `quality - lambda * quote`; ties go to higher quality,
//! then lower id. Money is integral.

use crate::model::{BidDirectives, BoyId, GirlId, Instance, Matching, PreferenceList, TieBreak};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BidError {
    #[error("reserve {reserve} of {boy} for {girl} is above her budget {budget}")]
    ReserveAboveBudget { boy: String, girl: String, reserve: i64, budget: i64 },
    #[error("quality for {girl} does not score {boy}")]
    MissingQuality { girl: String, boy: String },
}

/// An instance with budgets, reserves, quality scores and bid weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidInstance {
    pub base: Instance,
    budget: Vec<i64>,
    /// `reserve[b][g]`.
    reserve: Vec<Vec<i64>>,
    /// `quality[g][b]`.
    quality: Vec<Vec<i64>>,
    lambda: Vec<i64>,
}

impl BidInstance {
    /// Fills gaps in `bids`: budget and lambda default to 0, a reserve to the
    /// girl's budget, and a girl without quality scores ranks boys by her
    /// own list (first gets `n`, last gets 1).
    pub fn new(base: Instance, bids: &BidDirectives) -> Result<Self, BidError> {
        let n = base.n();
        let budget: Vec<i64> = base.girls().map(|g| bids.budget.get(&g).copied().unwrap_or(0)).collect();
        let lambda = base.girls().map(|g| bids.lambda.get(&g).copied().unwrap_or(0)).collect();
        let mut reserve = vec![budget.clone(); n];
        for (&(b, g), &v) in &bids.reserve {
            if v > budget[g.0] {
                return Err(BidError::ReserveAboveBudget {
                    boy: base.boy_label(b),
                    girl: base.girl_label(g),
                    reserve: v,
                    budget: budget[g.0],
                });
            }
            reserve[b.0][g.0] = v;
        }
        let quality = base
            .girls()
            .map(|g| match bids.quality.get(&g) {
                None => Ok(base.boys().map(|b| (n - base.girl_prefs(g).position(b)) as i64).collect()),
                Some(scores) => base
                    .boys()
                    .map(|b| {
                        scores.get(&b).copied().ok_or_else(|| BidError::MissingQuality {
                            girl: base.girl_label(g),
                            boy: base.boy_label(b),
                        })
                    })
                    .collect(),
            })
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        Ok(BidInstance { base, budget, reserve, quality, lambda })
    }

    pub fn budget(&self, g: GirlId) -> i64 {
        self.budget[g.0]
    }

    pub fn reserve(&self, b: BoyId, g: GirlId) -> i64 {
        self.reserve[b.0][g.0]
    }

    pub fn quality(&self, g: GirlId, b: BoyId) -> i64 {
        self.quality[g.0][b.0]
    }

    pub fn lambda(&self, g: GirlId) -> i64 {
        self.lambda[g.0]
    }

    pub fn score(&self, g: GirlId, b: BoyId, quote: i64) -> i64 {
        self.quality(g, b) - self.lambda(g) * quote
    }

    /// Does `g` rank (a, qa) above (b, qb)?
    fn prefers(&self, g: GirlId, (a, qa): (BoyId, i64), (b, qb): (BoyId, i64)) -> bool {
        let key = |x: BoyId, q: i64| (self.score(g, x, q), self.quality(g, x), std::cmp::Reverse(x));
        key(a, qa) > key(b, qb)
    }

    /// The base instance with every girl's list ordered by quality, ties by
    /// ascending id.
    pub fn quality_instance(&self) -> Instance {
        let mut inst = self.base.clone();
        for g in self.base.girls() {
            let mut order: Vec<BoyId> = self.base.boys().collect();
            order.sort_by_key(|&b| (std::cmp::Reverse(self.quality(g, b)), b));
            inst = inst
                .with_girl_prefs(g, PreferenceList::strict(order).expect("a permutation"))
                .expect("strict list of the right size");
        }
        inst
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BidEvent {
    /// `boy` proposes to `girl` quoting `quote`.
    Proposal { boy: BoyId, girl: GirlId, quote: i64 },
    /// The incumbent lowers his quote to meet a challenger.
    Requote { boy: BoyId, girl: GirlId, from: i64, to: i64 },
    /// The girl keeps `kept` at `quote`; `dropped` moves on.
    Decision { girl: GirlId, kept: BoyId, quote: i64, dropped: BoyId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BidTrace {
    pub events: Vec<BidEvent>,
    pub final_matching: Matching,
    /// Per boy, the quote he is matched at.
    pub quotes: Vec<Option<i64>>,
}

impl BidTrace {
    /// Every quote made per (boy, girl), in order.
    pub fn quote_history(&self) -> BTreeMap<(BoyId, GirlId), Vec<i64>> {
        let mut h: BTreeMap<(BoyId, GirlId), Vec<i64>> = BTreeMap::new();
        for e in &self.events {
            match *e {
                BidEvent::Proposal { boy, girl, quote } => h.entry((boy, girl)).or_default().push(quote),
                BidEvent::Requote { boy, girl, to, .. } => h.entry((boy, girl)).or_default().push(to),
                BidEvent::Decision { .. } => {}
            }
        }
        h
    }

    /// Scores of each girl's held (boy, quote), in the order they arose.
    pub fn held_scores(&self, bi: &BidInstance) -> BTreeMap<GirlId, Vec<i64>> {
        let mut h: BTreeMap<GirlId, Vec<i64>> = BTreeMap::new();
        let mut holder: BTreeMap<GirlId, BoyId> = BTreeMap::new();
        for e in &self.events {
            match *e {
                BidEvent::Proposal { boy, girl, quote } if !holder.contains_key(&girl) => {
                    holder.insert(girl, boy);
                    h.entry(girl).or_default().push(bi.score(girl, boy, quote));
                }
                BidEvent::Decision { girl, kept, quote, .. } => {
                    holder.insert(girl, kept);
                    h.entry(girl).or_default().push(bi.score(girl, kept, quote));
                }
                _ => {}
            }
        }
        h
    }
}

/// Sequential bidding play: boy `i` opens round `i` and proposes down his
/// list (ties ascending) until everyone so far is coupled.
pub fn run_bidding_gs(bi: &BidInstance) -> BidTrace {
    let inst = &bi.base;
    let n = inst.n();
    let orders: Vec<Vec<GirlId>> = inst.boys().map(|b| inst.proposal_order(b, TieBreak::AscendingId)).collect();
    let mut next = vec![0; n];
    let mut held: Vec<Option<(BoyId, i64)>> = vec![None; n];
    let mut events = Vec::new();
    for opener in inst.boys() {
        let mut free = Some(opener);
        while let Some(b) = free {
            let g = orders[b.0][next[b.0]];
            next[b.0] += 1;
            free = match held[g.0] {
                None => {
                    let quote = bi.budget(g);
                    events.push(BidEvent::Proposal { boy: b, girl: g, quote });
                    held[g.0] = Some((b, quote));
                    None
                }
                Some((h, current)) => {
                    let quote = bi.reserve(b, g);
                    events.push(BidEvent::Proposal { boy: b, girl: g, quote });
                    let floor = bi.reserve(h, g);
                    let incumbent = if floor < current {
                        events.push(BidEvent::Requote { boy: h, girl: g, from: current, to: floor });
                        (h, floor)
                    } else {
                        (h, current)
                    };
                    let (kept, dropped) =
                        if bi.prefers(g, (b, quote), incumbent) { ((b, quote), h) } else { (incumbent, b) };
                    events.push(BidEvent::Decision { girl: g, kept: kept.0, quote: kept.1, dropped });
                    held[g.0] = Some(kept);
                    Some(dropped)
                }
            };
        }
    }
    let mut final_matching = Matching::empty(n);
    let mut quotes = vec![None; n];
    for (g, slot) in held.iter().enumerate() {
        if let Some((b, q)) = *slot {
            final_matching.pair(b, GirlId(g)).expect("each boy holds one girl");
            quotes[b.0] = Some(q);
        }
    }
    BidTrace { events, final_matching, quotes }
}

/// One line per event, then `bI gJ @ quote` per pair.
pub fn format_bid_trace(bi: &BidInstance, trace: &BidTrace) -> String {
    let inst = &bi.base;
    let (b, g) = (|x: BoyId| inst.boy_label(x), |x: GirlId| inst.girl_label(x));
    let mut out = String::new();
    for e in &trace.events {
        let _ = match *e {
            BidEvent::Proposal { boy, girl, quote } => writeln!(out, "{}→{} @ {quote}", b(boy), g(girl)),
            BidEvent::Requote { boy, girl, from, to } => writeln!(out, "{} requotes {} {from} → {to}", b(boy), g(girl)),
            BidEvent::Decision { girl, kept, quote, dropped } => {
                writeln!(out, "{} keeps {} @ {quote}, drops {}", g(girl), b(kept), b(dropped))
            }
        };
    }
    for (boy, girl) in trace.final_matching.pairs() {
        let _ = writeln!(out, "{} {} @ {}", b(boy), g(girl), trace.quotes[boy.0].expect("matched"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_gale_shapley;
    use crate::model::gen_random;

    fn directives(budget: &[(usize, i64)], reserve: &[(usize, usize, i64)], lambda: &[(usize, i64)]) -> BidDirectives {
        BidDirectives {
            budget: budget.iter().map(|&(g, v)| (GirlId(g), v)).collect(),
            reserve: reserve.iter().map(|&(b, g, v)| ((BoyId(b), GirlId(g)), v)).collect(),
            quality: BTreeMap::new(),
            lambda: lambda.iter().map(|&(g, v)| (GirlId(g), v)).collect(),
        }
    }

    #[test]
    fn lone_pair_takes_the_full_budget() {
        let inst = Instance::from_orders(&[vec![0]], &[vec![0]]).unwrap();
        let bi = BidInstance::new(inst, &directives(&[(0, 100)], &[(0, 0, 40)], &[])).unwrap();
        let t = run_bidding_gs(&bi);
        assert_eq!(t.quotes, vec![Some(100)]);
    }

    #[test]
    fn cheaper_equal_boy_wins_at_his_reserve() {
        let inst = Instance::from_orders(&[vec![0, 1], vec![0, 1]], &[vec![0, 1], vec![0, 1]]).unwrap();
        let mut d = directives(&[(0, 100), (1, 100)], &[(0, 0, 60), (1, 0, 40)], &[(0, 1)]);
        d.quality.insert(GirlId(0), BTreeMap::from([(BoyId(0), 5), (BoyId(1), 5)]));
        let bi = BidInstance::new(inst, &d).unwrap();
        let t = run_bidding_gs(&bi);
        assert_eq!(t.final_matching.girl_of(BoyId(1)), Some(GirlId(0)));
        assert_eq!(t.quotes[1], Some(40));
        // b1 dropped from 100 to 60 before losing.
        assert_eq!(t.quote_history()[&(BoyId(0), GirlId(0))], vec![100, 60]);
    }

    #[test]
    fn reserve_above_budget_is_rejected() {
        let inst = Instance::from_orders(&[vec![0]], &[vec![0]]).unwrap();
        let e = BidInstance::new(inst, &directives(&[(0, 10)], &[(0, 0, 11)], &[])).unwrap_err();
        assert!(matches!(e, BidError::ReserveAboveBudget { reserve: 11, budget: 10, .. }));
    }

    #[test]
    fn default_quality_follows_the_girls_lists() {
        let inst = gen_random(5, 2).unwrap();
        let bi = BidInstance::new(inst.clone(), &BidDirectives::default()).unwrap();
        assert_eq!(bi.quality_instance(), inst);
        assert_eq!(run_bidding_gs(&bi).final_matching, run_gale_shapley(&inst).final_matching);
    }
}
