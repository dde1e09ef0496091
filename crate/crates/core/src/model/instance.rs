use super::ids::{boys, girls, BoyId, GirlId, Id};
use super::prefs::{PreferenceList, TieBreak};
use super::ModelError;

/// A stable-marriage instance with equal sides.
///
/// Unequal inputs are padded at construction; padding ids are flagged as
/// fictitious and sit at the tail of every real list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    boy_prefs: Vec<PreferenceList<GirlId>>,
    girl_prefs: Vec<PreferenceList<BoyId>>,
    fictitious_boys: Vec<bool>,
    fictitious_girls: Vec<bool>,
    base: usize,
}

impl Instance {
    /// Builds a square instance; every list must be complete.
    pub fn new(
        boy_prefs: Vec<PreferenceList<GirlId>>,
        girl_prefs: Vec<PreferenceList<BoyId>>,
    ) -> Result<Self, ModelError> {
        let n = boy_prefs.len();
        Self::with_flags(boy_prefs, girl_prefs, vec![false; n], vec![false; n])
    }

    /// Builds a square instance with explicit padding flags.
    pub fn with_flags(
        boy_prefs: Vec<PreferenceList<GirlId>>,
        girl_prefs: Vec<PreferenceList<BoyId>>,
        fictitious_boys: Vec<bool>,
        fictitious_girls: Vec<bool>,
    ) -> Result<Self, ModelError> {
        let n = boy_prefs.len();
        if girl_prefs.len() != n {
            return Err(ModelError::SizeMismatch { boys: n, girls: girl_prefs.len() });
        }
        if fictitious_boys.len() != n || fictitious_girls.len() != n {
            return Err(ModelError::SizeMismatch { boys: fictitious_boys.len(), girls: fictitious_girls.len() });
        }
        for p in &boy_prefs {
            if p.len() != n {
                return Err(ModelError::IncompleteList { expected: n, found: p.len() });
            }
        }
        for p in &girl_prefs {
            if p.len() != n {
                return Err(ModelError::IncompleteList { expected: n, found: p.len() });
            }
            if !p.is_strict() {
                return Err(ModelError::GirlTie);
            }
        }
        Ok(Instance { boy_prefs, girl_prefs, fictitious_boys, fictitious_girls, base: 1 })
    }

    /// Builds an instance from strict orders given as plain index vectors.
    pub fn from_orders(boy_orders: &[Vec<usize>], girl_orders: &[Vec<usize>]) -> Result<Self, ModelError> {
        let bp = boy_orders
            .iter()
            .map(|o| PreferenceList::strict(o.iter().map(|&g| GirlId(g)).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        let gp = girl_orders
            .iter()
            .map(|o| PreferenceList::strict(o.iter().map(|&b| BoyId(b)).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bp, gp)
    }

    /// Pads a rectangular instance: the short side gains fictitious members
    /// appended (ascending) to the tail of every real list of the other side.
    ///
    /// `boy_levels` range over `n_girls` girls, `girl_orders` over `n_boys` boys.
    pub fn padded(boy_levels: Vec<Vec<Vec<GirlId>>>, girl_orders: Vec<Vec<BoyId>>) -> Result<Self, ModelError> {
        let n_boys = boy_levels.len();
        let n_girls = girl_orders.len();
        let n = n_boys.max(n_girls);
        let mut bp = Vec::with_capacity(n);
        for mut levels in boy_levels {
            levels.extend(girls(n).skip(n_girls).map(|g| vec![g]));
            bp.push(PreferenceList::from_levels(levels, n)?);
        }
        for _ in n_boys..n {
            bp.push(PreferenceList::strict(girls(n).collect())?);
        }
        let mut gp = Vec::with_capacity(n);
        for mut order in girl_orders {
            order.extend(boys(n).skip(n_boys));
            gp.push(PreferenceList::strict(order)?);
        }
        for _ in n_girls..n {
            gp.push(PreferenceList::strict(boys(n).collect())?);
        }
        let fb = (0..n).map(|i| i >= n_boys).collect();
        let fg = (0..n).map(|i| i >= n_girls).collect();
        Self::with_flags(bp, gp, fb, fg)
    }

    pub fn with_base(mut self, base: usize) -> Self {
        self.base = base;
        self
    }

    /// Label base used when rendering ids (1 unless the source said otherwise).
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn n(&self) -> usize {
        self.boy_prefs.len()
    }

    pub fn boys(&self) -> impl Iterator<Item = BoyId> + Clone {
        boys(self.n())
    }

    pub fn girls(&self) -> impl Iterator<Item = GirlId> + Clone {
        girls(self.n())
    }

    pub fn boy_prefs(&self, b: BoyId) -> &PreferenceList<GirlId> {
        &self.boy_prefs[b.0]
    }

    pub fn girl_prefs(&self, g: GirlId) -> &PreferenceList<BoyId> {
        &self.girl_prefs[g.0]
    }

    pub fn is_fictitious_boy(&self, b: BoyId) -> bool {
        self.fictitious_boys[b.0]
    }

    pub fn is_fictitious_girl(&self, g: GirlId) -> bool {
        self.fictitious_girls[g.0]
    }

    /// Number of non-fictitious boys.
    pub fn real_boys(&self) -> usize {
        self.fictitious_boys.iter().filter(|f| !**f).count()
    }

    pub fn real_girls(&self) -> usize {
        self.fictitious_girls.iter().filter(|f| !**f).count()
    }

    /// Whether `b` strictly prefers `g1` over `g2`.
    pub fn boy_prefers(&self, b: BoyId, g1: GirlId, g2: GirlId) -> bool {
        self.boy_prefs[b.0].prefers(g1, g2)
    }

    /// Whether `g` prefers `b1` over `b2`.
    pub fn girl_prefers(&self, g: GirlId, b1: BoyId, b2: BoyId) -> bool {
        self.girl_prefs[g.0].prefers(b1, b2)
    }

    /// Naive proposal order of a boy with ties resolved by `tie`.
    pub fn proposal_order(&self, b: BoyId, tie: TieBreak) -> Vec<GirlId> {
        self.boy_prefs[b.0].flattened(tie)
    }

    pub fn boy_label(&self, b: BoyId) -> String {
        b.label(self.base)
    }

    pub fn girl_label(&self, g: GirlId) -> String {
        g.label(self.base)
    }

    /// Replaces one boy's list (used for falsified submissions).
    pub fn with_boy_prefs(mut self, b: BoyId, prefs: PreferenceList<GirlId>) -> Result<Self, ModelError> {
        if prefs.len() != self.n() {
            return Err(ModelError::IncompleteList { expected: self.n(), found: prefs.len() });
        }
        self.boy_prefs[b.0] = prefs;
        Ok(self)
    }

    /// Replaces one girl's list (used for falsified submissions).
    pub fn with_girl_prefs(mut self, g: GirlId, prefs: PreferenceList<BoyId>) -> Result<Self, ModelError> {
        if prefs.len() != self.n() {
            return Err(ModelError::IncompleteList { expected: self.n(), found: prefs.len() });
        }
        if !prefs.is_strict() {
            return Err(ModelError::GirlTie);
        }
        self.girl_prefs[g.0] = prefs;
        Ok(self)
    }

    /// Sub-instance on the given boys and girls (equal counts), lists
    /// restricted in original order; returns the id maps back to `self`.
    pub fn restrict(&self, keep_boys: &[BoyId], keep_girls: &[GirlId]) -> Result<SubInstance, ModelError> {
        if keep_boys.len() != keep_girls.len() {
            return Err(ModelError::SizeMismatch { boys: keep_boys.len(), girls: keep_girls.len() });
        }
        let mut girl_new = vec![None; self.n()];
        for (i, g) in keep_girls.iter().enumerate() {
            girl_new[g.0] = Some(GirlId(i));
        }
        let mut boy_new = vec![None; self.n()];
        for (i, b) in keep_boys.iter().enumerate() {
            boy_new[b.0] = Some(BoyId(i));
        }
        let m = keep_boys.len();
        let bp = keep_boys
            .iter()
            .map(|&b| {
                let levels: Vec<Vec<GirlId>> = self.boy_prefs[b.0]
                    .levels()
                    .iter()
                    .map(|grp| grp.iter().filter_map(|g| girl_new[g.0]).collect::<Vec<_>>())
                    .filter(|grp| !grp.is_empty())
                    .collect();
                PreferenceList::from_levels(levels, m)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let gp = keep_girls
            .iter()
            .map(|&g| {
                PreferenceList::strict(self.girl_prefs[g.0].order().iter().filter_map(|b| boy_new[b.0]).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fb = keep_boys.iter().map(|b| self.fictitious_boys[b.0]).collect();
        let fg = keep_girls.iter().map(|g| self.fictitious_girls[g.0]).collect();
        Ok(SubInstance {
            instance: Instance::with_flags(bp, gp, fb, fg)?.with_base(self.base),
            boys: keep_boys.to_vec(),
            girls: keep_girls.to_vec(),
        })
    }
}

/// A restricted instance plus the maps from its ids back to the parent's.
#[derive(Clone, Debug)]
pub struct SubInstance {
    pub instance: Instance,
    pub boys: Vec<BoyId>,
    pub girls: Vec<GirlId>,
}

/// An instance with per-boy satisfaction threshold and self-harm floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedInstance {
    pub base: Instance,
    ult: Vec<GirlId>,
    bottom: Vec<GirlId>,
}

impl AugmentedInstance {
    /// Both thresholds default to each boy's last preference.
    pub fn new(base: Instance) -> Self {
        let ult: Vec<GirlId> = base.boys().map(|b| base.boy_prefs(b).last()).collect();
        AugmentedInstance { bottom: ult.clone(), ult, base }
    }

    pub fn with_thresholds(base: Instance, ult: Vec<GirlId>, bottom: Vec<GirlId>) -> Result<Self, ModelError> {
        let n = base.n();
        if ult.len() != n || bottom.len() != n {
            return Err(ModelError::SizeMismatch { boys: ult.len(), girls: bottom.len() });
        }
        for b in base.boys() {
            if base.boy_prefers(b, bottom[b.0], ult[b.0]) {
                return Err(ModelError::UltBelowBottom(base.boy_label(b)));
            }
        }
        Ok(AugmentedInstance { base, ult, bottom })
    }

    pub fn ult(&self, b: BoyId) -> GirlId {
        self.ult[b.0]
    }

    pub fn bottom(&self, b: BoyId) -> GirlId {
        self.bottom[b.0]
    }

    pub fn set_ult(&mut self, b: BoyId, g: GirlId) -> Result<(), ModelError> {
        if self.base.boy_prefers(b, self.bottom[b.0], g) {
            return Err(ModelError::UltBelowBottom(self.base.boy_label(b)));
        }
        self.ult[b.0] = g;
        Ok(())
    }

    pub fn bottoms(&self) -> &[GirlId] {
        &self.bottom
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_adds_fictitious_girl() {
        let inst = Instance::padded(vec![vec![vec![GirlId(0)]], vec![vec![GirlId(0)]]], vec![vec![BoyId(1), BoyId(0)]])
            .unwrap();
        assert_eq!(inst.n(), 2);
        assert!(inst.is_fictitious_girl(GirlId(1)));
        assert_eq!(inst.boy_prefs(BoyId(0)).last(), GirlId(1));
        assert_eq!(inst.real_girls(), 1);
    }

    #[test]
    fn restriction_keeps_relative_order() {
        let inst =
            Instance::from_orders(&[vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]], &vec![vec![0, 1, 2]; 3]).unwrap();
        let sub = inst.restrict(&[BoyId(0), BoyId(2)], &[GirlId(1), GirlId(2)]).unwrap();
        assert_eq!(sub.instance.boy_prefs(BoyId(0)).order(), &[GirlId(1), GirlId(0)]);
        assert_eq!(sub.instance.girl_prefs(GirlId(0)).order(), &[BoyId(0), BoyId(1)]);
    }
}
