use super::ids::{BoyId, GirlId};
use super::instance::Instance;
use super::matching::Matching;
use super::ModelError;

/// Every blocking pair among real ids, in ascending (boy, girl) order.
///
/// The matching must be complete over all ids, padding included.
pub fn blocking_pairs(inst: &Instance, m: &Matching) -> Result<Vec<(BoyId, GirlId)>, ModelError> {
    if m.n() != inst.n() || !m.is_complete() {
        return Err(ModelError::IncompleteMatching);
    }
    let mut out = Vec::new();
    for b in inst.boys().filter(|&b| !inst.is_fictitious_boy(b)) {
        let mine = m.girl_of(b).ok_or(ModelError::IncompleteMatching)?;
        for g in inst.girls().filter(|&g| !inst.is_fictitious_girl(g)) {
            let holder = m.boy_of(g).ok_or(ModelError::IncompleteMatching)?;
            if inst.boy_prefers(b, g, mine) && inst.girl_prefers(g, b, holder) {
                out.push((b, g));
            }
        }
    }
    Ok(out)
}

/// Whether the matching is strictly stable.
pub fn is_stable(inst: &Instance, m: &Matching) -> Result<bool, ModelError> {
    blocking_pairs(inst, m).map(|v| v.is_empty())
}
