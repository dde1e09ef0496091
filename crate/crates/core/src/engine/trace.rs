use super::EngineError;
use crate::model::{BoyId, GirlId, Id, Matching};
use std::collections::BTreeSet;
use std::ops::Range;

/// One proposal event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayElement {
    /// One-based id among recorded elements.
    pub id: usize,
    /// Zero-based position among all proposals, recorded or not.
    pub seq: usize,
    pub boy: BoyId,
    pub girl: GirlId,
    pub accepted: bool,
    /// Who held the girl when the proposal arrived.
    pub holder_before: Option<BoyId>,
}

impl PlayElement {
    /// Boy kicked out by this proposal.
    pub fn displaced(&self) -> Option<BoyId> {
        if self.accepted {
            self.holder_before
        } else {
            None
        }
    }

    /// Who holds the girl right after this proposal.
    pub fn winner(&self) -> BoyId {
        if self.accepted {
            self.boy
        } else {
            self.holder_before.expect("a refusal needs a holder")
        }
    }
}

/// Elements of one canonical round, opened by `opener`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub opener: BoyId,
    pub elements: Range<usize>,
}

/// Full record of a sequential play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayTrace {
    pub base: usize,
    /// Empty unless the canonical schedule was used.
    pub rounds: Vec<Round>,
    pub elements: Vec<PlayElement>,
    pub final_matching: Matching,
    /// Per girl, her holders in order, starting from vacant.
    pub temperature: Vec<Vec<Option<BoyId>>>,
    /// Per girl, `seq` of the last proposal she received.
    pub last_targeted: Vec<Option<usize>>,
    pub proposal_count: usize,
    pub naive: bool,
    pub refusals_recorded: bool,
}

/// Rendering switches for [`format_trace`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TraceStyle {
    /// Append `(id)` to each element.
    pub ids: bool,
    /// Use `->` instead of `→`.
    pub ascii: bool,
}

fn element_text(e: &PlayElement, base: usize, style: TraceStyle) -> String {
    let arrow = if style.ascii { "->" } else { "→" };
    let mut s = format!("{}{}{}", e.boy.label(base), arrow, e.girl.label(base));
    if e.holder_before.is_some() {
        s.push_str(&format!("({})", e.winner().label(base)));
    }
    if style.ids {
        s.push_str(&format!("({})", e.id));
    }
    s
}

/// Renders the trace as `Round bI: bX→gY(bW) | ….` lines; the winner is shown
/// whenever the girl was held before the proposal. Non-canonical plays print
/// as a single `Play:` line.
pub fn format_trace(trace: &PlayTrace, style: TraceStyle) -> String {
    let join = |r: Range<usize>| {
        trace.elements[r].iter().map(|e| element_text(e, trace.base, style)).collect::<Vec<_>>().join(" | ")
    };
    if trace.elements.is_empty() {
        return String::new();
    }
    if trace.rounds.is_empty() {
        return format!("Play: {}.\n", join(0..trace.elements.len()));
    }
    let mut out = String::new();
    for r in &trace.rounds {
        if r.elements.is_empty() {
            continue;
        }
        out.push_str(&format!("Round {}: {}.\n", r.opener.label(trace.base), join(r.elements.clone())));
    }
    out
}

/// Pairs whose boy's final proposal went to a then-vacant girl who received
/// no later proposal.
pub fn hopeless_pairs(trace: &PlayTrace) -> Result<BTreeSet<(BoyId, GirlId)>, EngineError> {
    let complete = if trace.rounds.is_empty() {
        trace.final_matching.is_complete()
    } else {
        trace.rounds.iter().all(|r| trace.final_matching.girl_of(r.opener).is_some())
    };
    if !complete {
        return Err(EngineError::IncompleteTrace);
    }
    let mut last: Vec<Option<&PlayElement>> = vec![None; trace.final_matching.n()];
    for e in &trace.elements {
        last[e.boy.0] = Some(e);
    }
    Ok(last
        .into_iter()
        .flatten()
        .filter(|e| e.accepted && e.holder_before.is_none() && trace.last_targeted[e.girl.0] == Some(e.seq))
        .map(|e| (e.boy, e.girl))
        .collect())
}
