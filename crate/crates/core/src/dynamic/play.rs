//! Concurrent play texts.
//!
//! ```text
//! T(0) = P0; P1.
//! P0(0) = b2→g2; b3→g3.
//! P1(0) = b1, b4→g1(b1) | b4→P2.
//! P2(1) = b4→g3 | b3→g2.
//! ```
//!
//! A definition lists plays started together, separated by `;`. Within a
//! play, `|` advances the time index by one. `bX→NAME` (or a bare `NAME`)
//! stands for the named play; a name without a declared start inherits the
//! position it is referenced from. `(bW)` names the boy holding the girl
//! after the element; without it the sole proposer is accepted. `->` may
//! replace `→`.
//!
//! Sequential traces are accepted too: `Round bI: …` and `Play: …` lines put
//! each element on its own time index, and `Step T: e; e` lines put all
//! listed elements at index `T`.

use super::DynamicError;
use crate::model::{BoyId, GirlId, Id, ParseError};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Boys proposing to one girl at one time index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayEvent {
    pub time: usize,
    /// Source line, for diagnostics.
    pub line: usize,
    pub proposers: Vec<BoyId>,
    pub girl: GirlId,
    /// Who holds the girl right after the event.
    pub winner: BoyId,
}

impl PlayEvent {
    pub fn accepted(&self) -> bool {
        self.proposers.contains(&self.winner)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcurrentPlay {
    pub base: usize,
    /// Ordered by time index; ties keep text order.
    pub events: Vec<PlayEvent>,
}

impl ConcurrentPlay {
    /// One past the largest id mentioned on either side.
    pub fn n(&self) -> usize {
        self.events
            .iter()
            .flat_map(|e| e.proposers.iter().map(|b| b.0).chain([e.girl.0, e.winner.0]))
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Every (boy, girl) proposal in time order.
    pub fn proposals(&self) -> impl Iterator<Item = (usize, BoyId, GirlId)> + '_ {
        self.events.iter().flat_map(|e| e.proposers.iter().map(move |&b| (e.time, b, e.girl)))
    }

    /// Events keyed by (time, girl) with merged, sorted proposers.
    pub fn normalized(&self) -> BTreeMap<(usize, GirlId), (Vec<BoyId>, BoyId)> {
        let mut out: BTreeMap<(usize, GirlId), (Vec<BoyId>, BoyId)> = BTreeMap::new();
        for e in &self.events {
            let entry = out.entry((e.time, e.girl)).or_insert_with(|| (Vec::new(), e.winner));
            entry.0.extend(&e.proposers);
            entry.0.sort();
            entry.0.dedup();
            entry.1 = e.winner;
        }
        out
    }
}

fn label_index(tok: &str, side: char, base: usize) -> Option<usize> {
    let digits = tok.strip_prefix(side)?;
    let v: usize = digits.parse().ok()?;
    v.checked_sub(base)
}

fn boy_label(line: usize, tok: &str, base: usize) -> Result<BoyId, ParseError> {
    label_index(tok.trim(), 'b', base)
        .map(BoyId)
        .ok_or_else(|| ParseError::new(line, format!("expected a boy like `b{base}`, found `{}`", tok.trim())))
}

fn is_girl_label(tok: &str) -> bool {
    tok.strip_prefix('g').is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
}

enum Item {
    Element { proposers: Vec<BoyId>, girl: GirlId, winner: Option<BoyId> },
    Reference(String),
}

fn parse_item(line: usize, raw: &str, base: usize) -> Result<Option<Item>, ParseError> {
    let text = raw.trim().trim_end_matches('.').trim();
    if text.is_empty() {
        return Ok(None);
    }
    let Some((left, right)) = text.split_once('→') else {
        if text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Ok(Some(Item::Reference(text.to_string())));
        }
        return Err(ParseError::new(line, format!("expected `b→g`, found `{text}`")));
    };
    let right = right.trim();
    let (target, notes) = match right.find('(') {
        Some(i) => (right[..i].trim(), &right[i..]),
        None => (right, ""),
    };
    if !is_girl_label(target) {
        if notes.is_empty() && !target.is_empty() {
            return Ok(Some(Item::Reference(target.to_string())));
        }
        return Err(ParseError::new(line, format!("expected a girl, found `{target}`")));
    }
    let girl = GirlId(
        label_index(target, 'g', base).ok_or_else(|| ParseError::new(line, format!("girl `{target}` below base")))?,
    );
    let proposers = left.split(',').map(|t| boy_label(line, t, base)).collect::<Result<Vec<_>, _>>()?;
    // `(bW)` is the winner; numeric `(k)` suffixes are element ids and ignored.
    let mut winner = None;
    for note in notes.split('(').skip(1) {
        let inner = note.split_once(')').ok_or_else(|| ParseError::new(line, "unclosed `(`"))?.0.trim();
        if inner.starts_with('b') {
            winner = Some(boy_label(line, inner, base)?);
        } else if inner.parse::<usize>().is_err() {
            return Err(ParseError::new(line, format!("unexpected annotation `({inner})`")));
        }
    }
    if winner.is_none() && proposers.len() > 1 {
        return Err(ParseError::new(line, "several proposers need a `(bW)` winner"));
    }
    Ok(Some(Item::Element { proposers, girl, winner }))
}

struct Definition {
    line: usize,
    start: Option<usize>,
    body: String,
}

/// `NAME (T) = body` or `NAME = body`.
fn definition_header(text: &str) -> Option<(String, Option<usize>, String)> {
    let (head, body) = text.split_once('=')?;
    let head = head.trim();
    let (name, start) = match head.split_once('(') {
        Some((name, rest)) => {
            let t = rest.strip_suffix(')')?.trim().parse().ok()?;
            (name.trim(), Some(t))
        }
        None => (head, None),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    Some((name.to_string(), start, body.trim().to_string()))
}

struct Builder {
    base: usize,
    events: Vec<PlayEvent>,
}

impl Builder {
    fn push(&mut self, line: usize, time: usize, item: Item) -> Result<(), ParseError> {
        match item {
            Item::Element { proposers, girl, winner } => {
                let winner = winner.unwrap_or(proposers[0]);
                self.events.push(PlayEvent { time, line, proposers, girl, winner });
                Ok(())
            }
            Item::Reference(name) => Err(ParseError::new(line, format!("`{name}` is not allowed here"))),
        }
    }
}

/// Parses a play text; labels follow `base`.
pub fn parse_play(text: &str, base: usize) -> Result<ConcurrentPlay, ParseError> {
    let mut b = Builder { base, events: Vec::new() };
    let mut defs: Vec<(String, Definition)> = Vec::new();
    let mut clock = 0usize;
    let mut sequential = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").replace("->", "→");
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let lower = content.to_ascii_lowercase();
        if lower.starts_with("round") || lower.starts_with("play:") {
            sequential = true;
            let body = content.split_once(':').map(|x| x.1).unwrap_or("");
            for part in body.split(['|', ';']) {
                if let Some(item) = parse_item(line, part, b.base)? {
                    b.push(line, clock, item)?;
                    clock += 1;
                }
            }
        } else if lower.starts_with("step") {
            sequential = true;
            let (head, body) = content.split_once(':').ok_or_else(|| ParseError::new(line, "expected `Step T: …`"))?;
            let t: usize =
                head[4..].trim().parse().map_err(|_| ParseError::new(line, format!("bad step index in `{head}`")))?;
            for part in body.split(';') {
                if let Some(item) = parse_item(line, part, b.base)? {
                    b.push(line, t, item)?;
                }
            }
        } else if let Some((name, start, body)) = definition_header(content) {
            if defs.iter().any(|(n, _)| *n == name) {
                return Err(ParseError::new(line, format!("`{name}` defined twice")));
            }
            defs.push((name, Definition { line, start, body }));
        } else if let Some((_, last)) = defs.last_mut() {
            last.body.push(' ');
            last.body.push_str(content);
        } else {
            return Err(ParseError::new(line, format!("unrecognised line `{content}`")));
        }
    }
    if sequential && !defs.is_empty() {
        return Err(ParseError::new(defs[0].1.line, "definitions cannot be mixed with Round/Step lines"));
    }
    if let Some((root, _)) = defs.first() {
        let root = root.clone();
        let table: HashMap<String, Definition> = defs.into_iter().collect();
        let mut expanded = BTreeSet::new();
        expand(&table, &root, 0, &mut expanded, &mut b)?;
    }
    let mut events = b.events;
    events.sort_by_key(|e| e.time);
    Ok(ConcurrentPlay { base, events })
}

fn expand(
    table: &HashMap<String, Definition>,
    name: &str,
    inherited: usize,
    expanded: &mut BTreeSet<String>,
    b: &mut Builder,
) -> Result<(), ParseError> {
    let def = &table[name];
    if !expanded.insert(name.to_string()) {
        return Err(ParseError::new(def.line, format!("`{name}` is referenced twice")));
    }
    let start = def.start.unwrap_or(inherited);
    for branch in def.body.split(';') {
        for (k, part) in branch.split('|').enumerate() {
            match parse_item(def.line, part, b.base)? {
                None => {}
                Some(Item::Reference(r)) => {
                    if !table.contains_key(&r) {
                        return Err(ParseError::new(def.line, format!("unknown play `{r}`")));
                    }
                    expand(table, &r, start + k, expanded, b)?;
                }
                Some(item) => b.push(def.line, start + k, item)?,
            }
        }
    }
    Ok(())
}

/// Why a play cannot arise from any set of girls' lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The boy proposed to the girl at two time indices.
    DoubleProposal { boy: BoyId, girl: GirlId, first: usize, second: usize },
    /// The boy proposed twice within one time index.
    TwoAtOnce { boy: BoyId, time: usize },
    /// The named winner neither proposed nor held the girl.
    StrangerWins { girl: GirlId, time: usize, winner: BoyId },
    /// The girl refused everyone while vacant.
    VacantRefusal { girl: GirlId, time: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub plausible: bool,
    pub violations: Vec<Violation>,
}

/// A play is plausible when no boy proposes twice to one girl; winner
/// annotations that cannot follow from any list are reported too.
pub fn validate_play(play: &ConcurrentPlay) -> Validation {
    let mut violations = Vec::new();
    let mut first_time: HashMap<(BoyId, GirlId), usize> = HashMap::new();
    let mut per_step: HashMap<(BoyId, usize), ()> = HashMap::new();
    for (t, b, g) in play.proposals() {
        if let Some(&first) = first_time.get(&(b, g)) {
            violations.push(Violation::DoubleProposal { boy: b, girl: g, first, second: t });
        } else {
            first_time.insert((b, g), t);
        }
        if per_step.insert((b, t), ()).is_some() {
            violations.push(Violation::TwoAtOnce { boy: b, time: t });
        }
    }
    let mut holder: HashMap<GirlId, BoyId> = HashMap::new();
    for e in &play.events {
        if e.accepted() {
            holder.insert(e.girl, e.winner);
        } else {
            match holder.get(&e.girl) {
                Some(&h) if h == e.winner => {}
                Some(_) => violations.push(Violation::StrangerWins { girl: e.girl, time: e.time, winner: e.winner }),
                None => violations.push(Violation::VacantRefusal { girl: e.girl, time: e.time }),
            }
        }
    }
    Validation { plausible: violations.is_empty(), violations }
}

/// Preference facts per girl: (better, worse) pairs plus an order consistent
/// with the single play (accepted in reverse, then refused, then the rest).
struct GirlFacts {
    beats: BTreeSet<(BoyId, BoyId)>,
    order: Vec<BoyId>,
}

fn facts(play: &ConcurrentPlay, n: usize) -> Vec<GirlFacts> {
    let mut holder: Vec<Option<BoyId>> = vec![None; n];
    let mut accepted: Vec<Vec<BoyId>> = vec![Vec::new(); n];
    let mut refused: Vec<Vec<BoyId>> = vec![Vec::new(); n];
    let mut beats: Vec<BTreeSet<(BoyId, BoyId)>> = vec![BTreeSet::new(); n];
    for e in &play.events {
        let g = e.girl.0;
        let w = e.winner;
        for &p in e.proposers.iter().filter(|&&p| p != w) {
            beats[g].insert((w, p));
            refused[g].push(p);
        }
        if e.accepted() {
            if let Some(h) = holder[g].filter(|&h| h != w) {
                beats[g].insert((w, h));
            }
            accepted[g].push(w);
            holder[g] = Some(w);
        }
    }
    (0..n)
        .map(|g| {
            let mut order: Vec<BoyId> = Vec::new();
            let tail = (0..n).map(BoyId);
            for b in accepted[g].iter().rev().chain(&refused[g]).copied().chain(tail) {
                if !order.contains(&b) {
                    order.push(b);
                }
            }
            GirlFacts { beats: std::mem::take(&mut beats[g]), order }
        })
        .collect()
}

/// Girls' lists under which every given play unfolds as written. The first
/// play's own reconstruction decides every order the plays leave open.
pub fn reconstruct_preferences(n: usize, plays: &[ConcurrentPlay]) -> Result<Vec<Vec<BoyId>>, DynamicError> {
    for p in plays {
        let v = validate_play(p);
        if !v.plausible {
            return Err(DynamicError::Implausible(v.violations.len()));
        }
    }
    let n = plays.iter().map(ConcurrentPlay::n).fold(n, usize::max);
    let base = plays.first().map_or(1, |p| p.base);
    let all: Vec<Vec<GirlFacts>> = plays.iter().map(|p| facts(p, n)).collect();
    (0..n)
        .map(|g| {
            let priority: Vec<usize> = match all.first() {
                Some(first) => {
                    let mut rank = vec![0; n];
                    for (i, b) in first[g].order.iter().enumerate() {
                        rank[b.0] = i;
                    }
                    rank
                }
                None => (0..n).collect(),
            };
            let mut above: Vec<Vec<BoyId>> = vec![Vec::new(); n];
            let mut pending = vec![0usize; n];
            for f in &all {
                for &(w, l) in &f[g].beats {
                    if !above[w.0].contains(&l) {
                        above[w.0].push(l);
                        pending[l.0] += 1;
                    }
                }
            }
            // Kahn's algorithm, picking the ready boy the first play ranks highest.
            let mut ready: BTreeSet<(usize, BoyId)> =
                (0..n).filter(|&b| pending[b] == 0).map(|b| (priority[b], BoyId(b))).collect();
            let mut order = Vec::with_capacity(n);
            while let Some((_, b)) = ready.pop_first() {
                order.push(b);
                for &l in &above[b.0] {
                    pending[l.0] -= 1;
                    if pending[l.0] == 0 {
                        ready.insert((priority[l.0], l));
                    }
                }
            }
            if order.len() < n {
                let stuck: Vec<String> = (0..n).filter(|&b| pending[b] > 0).map(|b| BoyId(b).label(base)).collect();
                return Err(DynamicError::Conflict { girl: GirlId(g).label(base), boys: stuck.join(", ") });
            }
            Ok(order)
        })
        .collect()
}

/// Each boy's proposals in play order, then the girls he never tried,
/// ascending.
pub fn infer_boy_orders(n: usize, play: &ConcurrentPlay) -> Vec<Vec<GirlId>> {
    let n = n.max(play.n());
    let mut orders: Vec<Vec<GirlId>> = vec![Vec::new(); n];
    for (_, b, g) in play.proposals() {
        if !orders[b.0].contains(&g) {
            orders[b.0].push(g);
        }
    }
    for o in &mut orders {
        for g in (0..n).map(GirlId) {
            if !o.contains(&g) {
                o.push(g);
            }
        }
    }
    orders
}
