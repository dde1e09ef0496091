//! Instance transformers for partial awareness, multi-slot girls and girls
//! rejecting through fictitious boys.

use super::ids::{BoyId, GirlId};
use super::instance::Instance;
use super::matching::Matching;
use super::prefs::PreferenceList;
use super::ModelError;
use std::collections::{BTreeMap, BTreeSet};

/// Pads an instance where boys know only some girls.
///
/// Each boy's list keeps his known girls in order, then fictitious girls up
/// to position `n`, then the unknown girls in original order, then any
/// remaining fictitious girls. One fictitious boy is added per fictitious
/// girl; every girl ranks them last, and they rank fictitious girls first.
pub fn pad_fictitious(inst: &Instance, known: &BTreeMap<BoyId, BTreeSet<GirlId>>) -> Result<Instance, ModelError> {
    let n = inst.n();
    let known_of = |b: BoyId| -> Vec<GirlId> {
        let order = inst.proposal_order(b, super::prefs::TieBreak::AsWritten);
        match known.get(&b) {
            Some(set) => order.into_iter().filter(|g| set.contains(g)).collect(),
            None => order,
        }
    };
    let extra = inst.boys().map(|b| n - known_of(b).len()).max().unwrap_or(0);
    let total = n + extra;
    let fict_girls: Vec<GirlId> = (n..total).map(GirlId).collect();

    let mut bp = Vec::with_capacity(total);
    for b in inst.boys() {
        let k = known_of(b);
        let gap = n - k.len();
        let mut levels: Vec<Vec<GirlId>> = Vec::with_capacity(total);
        let known_set: BTreeSet<GirlId> = k.iter().copied().collect();
        // Known girls keep their tie structure.
        for grp in inst.boy_prefs(b).levels() {
            let kept: Vec<GirlId> = grp.iter().copied().filter(|g| known_set.contains(g)).collect();
            if !kept.is_empty() {
                levels.push(kept);
            }
        }
        levels.extend(fict_girls[..gap].iter().map(|&g| vec![g]));
        levels.extend(
            inst.proposal_order(b, super::prefs::TieBreak::AsWritten)
                .into_iter()
                .filter(|g| !known_set.contains(g))
                .map(|g| vec![g]),
        );
        levels.extend(fict_girls[gap..].iter().map(|&g| vec![g]));
        bp.push(PreferenceList::from_levels(levels, total)?);
    }
    for _ in n..total {
        let order: Vec<GirlId> = fict_girls.iter().copied().chain((0..n).map(GirlId)).collect();
        bp.push(PreferenceList::strict(order)?);
    }
    let gp = (0..total)
        .map(|g| {
            let order: Vec<BoyId> = if g < n {
                inst.girl_prefs(GirlId(g)).order().iter().copied().chain((n..total).map(BoyId)).collect()
            } else {
                (0..total).map(BoyId).collect()
            };
            PreferenceList::strict(order)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fb = (0..total).map(|i| i >= n || inst.is_fictitious_boy(BoyId(i))).collect();
    let fg = (0..total).map(|i| i >= n || inst.is_fictitious_girl(GirlId(i))).collect();
    Ok(Instance::with_flags(bp, gp, fb, fg)?.with_base(inst.base()))
}

/// An instance whose multi-slot girls were split into slot-girls.
#[derive(Clone, Debug)]
pub struct SlottedInstance {
    pub instance: Instance,
    /// Original girl for each slot-girl; `None` for padding girls.
    pub parent: Vec<Option<GirlId>>,
    /// Number of boys in the source instance; higher ids are padding.
    pub source_boys: usize,
}

impl SlottedInstance {
    /// Projects a matching on the expanded instance back to (boy, girl) pairs
    /// of the source, dropping padding boys.
    pub fn project(&self, m: &Matching) -> Vec<(BoyId, GirlId)> {
        m.pairs()
            .filter(|(b, _)| b.0 < self.source_boys)
            .filter_map(|(b, s)| self.parent[s.0].map(|g| (b, g)))
            .collect()
    }
}

/// Splits every girl with capacity `k` into `min(k, n)` adjacent slot-girls.
///
/// Slots of one girl share her tie-group in each boy's list and copy her
/// list; padding boys fill the extra slots and rank last everywhere.
pub fn expand_slots(inst: &Instance, slots: &BTreeMap<GirlId, usize>) -> Result<SlottedInstance, ModelError> {
    let n = inst.n();
    let mut slot_ids: Vec<Vec<GirlId>> = Vec::with_capacity(n);
    let mut parent = Vec::new();
    for g in inst.girls() {
        let k = slots.get(&g).copied().unwrap_or(1).clamp(1, n);
        let ids = (0..k).map(|_| {
            parent.push(Some(g));
            GirlId(parent.len() - 1)
        });
        slot_ids.push(ids.collect());
    }
    let total = parent.len();
    let bp = (0..total)
        .map(|b| {
            if b < n {
                let levels = inst
                    .boy_prefs(BoyId(b))
                    .levels()
                    .iter()
                    .map(|grp| grp.iter().flat_map(|g| slot_ids[g.0].iter().copied()).collect())
                    .collect();
                PreferenceList::from_levels(levels, total)
            } else {
                PreferenceList::strict((0..total).map(GirlId).collect())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gp = (0..total)
        .map(|s| {
            let g = parent[s].expect("every slot has a parent");
            let order = inst.girl_prefs(g).order().iter().copied().chain((n..total).map(BoyId)).collect();
            PreferenceList::strict(order)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fb = (0..total).map(|i| i >= n || inst.is_fictitious_boy(BoyId(i))).collect();
    let fg = (0..total).map(|s| inst.is_fictitious_girl(parent[s].expect("every slot has a parent"))).collect();
    Ok(SlottedInstance {
        instance: Instance::with_flags(bp, gp, fb, fg)?.with_base(inst.base()),
        parent,
        source_boys: n,
    })
}

/// An instance with one rejector boy and one shadow girl per original girl.
#[derive(Clone, Debug)]
pub struct RejectorInstance {
    pub instance: Instance,
    /// Rejector boy of each original girl.
    pub rejector: Vec<BoyId>,
    /// Shadow girl paired with each rejector.
    pub shadow: Vec<GirlId>,
    source_n: usize,
}

impl RejectorInstance {
    /// Moves girl `g`'s rejector to `position` (0 = top) in her list.
    pub fn place_rejector(&self, g: GirlId, position: usize) -> Result<RejectorInstance, ModelError> {
        let r = self.rejector[g.0];
        let mut order: Vec<BoyId> = self.instance.girl_prefs(g).order().iter().copied().filter(|&b| b != r).collect();
        order.insert(position.min(order.len()), r);
        Ok(RejectorInstance {
            instance: self.instance.clone().with_girl_prefs(g, PreferenceList::strict(order)?)?,
            ..self.clone()
        })
    }

    /// Pairs between source boys and source girls.
    pub fn project(&self, m: &Matching) -> Vec<(BoyId, GirlId)> {
        m.pairs().filter(|(b, g)| b.0 < self.source_n && g.0 < self.source_n).collect()
    }
}

/// Adds, per girl `g`, a boy `b'` whose list is `g`, then a fresh girl `g'`,
/// then everything else; `g'` ranks `b'` first. Every original girl ranks
/// all rejectors last (her own first among them), so outcomes are unchanged
/// until a rejector is moved up with [`RejectorInstance::place_rejector`].
pub fn add_rejector_boys(inst: &Instance) -> Result<RejectorInstance, ModelError> {
    let n = inst.n();
    let total = 2 * n;
    let rejector: Vec<BoyId> = (n..total).map(BoyId).collect();
    let shadow: Vec<GirlId> = (n..total).map(GirlId).collect();
    let mut bp = Vec::with_capacity(total);
    for b in inst.boys() {
        let mut levels: Vec<Vec<GirlId>> = inst.boy_prefs(b).levels().to_vec();
        levels.extend(shadow.iter().map(|&g| vec![g]));
        bp.push(PreferenceList::from_levels(levels, total)?);
    }
    for g in inst.girls() {
        let order: Vec<GirlId> = [g, shadow[g.0]]
            .into_iter()
            .chain((0..total).map(GirlId).filter(|&x| x != g && x != shadow[g.0]))
            .collect();
        bp.push(PreferenceList::strict(order)?);
    }
    let mut gp = Vec::with_capacity(total);
    for g in inst.girls() {
        let order: Vec<BoyId> = inst
            .girl_prefs(g)
            .order()
            .iter()
            .copied()
            .chain(std::iter::once(rejector[g.0]))
            .chain(rejector.iter().copied().filter(|&r| r != rejector[g.0]))
            .collect();
        gp.push(PreferenceList::strict(order)?);
    }
    for g in inst.girls() {
        let order: Vec<BoyId> =
            std::iter::once(rejector[g.0]).chain((0..total).map(BoyId).filter(|&b| b != rejector[g.0])).collect();
        gp.push(PreferenceList::strict(order)?);
    }
    let fb = (0..total).map(|i| i >= n || inst.is_fictitious_boy(BoyId(i))).collect();
    let fg = (0..total).map(|i| i >= n || inst.is_fictitious_girl(GirlId(i))).collect();
    Ok(RejectorInstance {
        instance: Instance::with_flags(bp, gp, fb, fg)?.with_base(inst.base()),
        rejector,
        shadow,
        source_n: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Instance {
        Instance::from_orders(
            &[vec![0, 1, 2], vec![1, 0, 2], vec![0, 2, 1]],
            &[vec![1, 0, 2], vec![0, 1, 2], vec![2, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn full_awareness_changes_nothing() {
        let inst = tiny();
        let padded = pad_fictitious(&inst, &BTreeMap::new()).unwrap();
        assert_eq!(padded, inst);
    }

    #[test]
    fn zero_awareness_puts_fictitious_on_top() {
        let inst = tiny();
        let known = BTreeMap::from([(BoyId(0), BTreeSet::new())]);
        let padded = pad_fictitious(&inst, &known).unwrap();
        assert_eq!(padded.n(), 6);
        let top: Vec<GirlId> = padded.boy_prefs(BoyId(0)).order()[..3].to_vec();
        assert!(top.iter().all(|&g| padded.is_fictitious_girl(g)));
    }

    #[test]
    fn unit_capacities_are_isomorphic() {
        let inst = tiny();
        let s = expand_slots(&inst, &BTreeMap::new()).unwrap();
        assert_eq!(s.instance, inst);
        assert_eq!(s.parent, vec![Some(GirlId(0)), Some(GirlId(1)), Some(GirlId(2))]);
    }

    #[test]
    fn rejector_starts_last() {
        let inst = tiny();
        let r = add_rejector_boys(&inst).unwrap();
        assert_eq!(r.instance.n(), 6);
        assert_eq!(r.instance.girl_prefs(GirlId(0)).position(r.rejector[0]), 3);
        assert_eq!(r.instance.boy_prefs(r.rejector[1]).order()[..2], [GirlId(1), r.shadow[1]]);
    }
}
