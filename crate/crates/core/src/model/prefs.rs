use super::ids::Id;
use super::ModelError;

/// How a tie-group is flattened into a proposal order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Ascending id inside each tie-group.
    #[default]
    AscendingId,
    /// The order the group was written in.
    AsWritten,
}

/// An ordered list of tie-groups over the opposite side.
///
/// `order()` is the written flattening; `level_of` gives the tie-group index
/// used for preference comparisons, so two members of one group are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceList<T: Id> {
    levels: Vec<Vec<T>>,
    order: Vec<T>,
    position: Vec<usize>,
    level: Vec<usize>,
}

impl<T: Id> PreferenceList<T> {
    /// Builds a list from tie-groups; it must cover `0..size` exactly once.
    pub fn from_levels(levels: Vec<Vec<T>>, size: usize) -> Result<Self, ModelError> {
        let mut position = vec![usize::MAX; size];
        let mut level = vec![usize::MAX; size];
        let mut order = Vec::with_capacity(size);
        for (li, group) in levels.iter().enumerate() {
            if group.is_empty() {
                return Err(ModelError::EmptyTieGroup);
            }
            for &x in group {
                let i = x.index();
                if i >= size {
                    return Err(ModelError::UnknownId(x.label(1)));
                }
                if position[i] != usize::MAX {
                    return Err(ModelError::DuplicateId(x.label(1)));
                }
                position[i] = order.len();
                level[i] = li;
                order.push(x);
            }
        }
        if order.len() != size {
            return Err(ModelError::IncompleteList { expected: size, found: order.len() });
        }
        Ok(PreferenceList { levels, order, position, level })
    }

    /// Builds a strict list from a permutation.
    pub fn strict(order: Vec<T>) -> Result<Self, ModelError> {
        let size = order.len();
        Self::from_levels(order.into_iter().map(|x| vec![x]).collect(), size)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn levels(&self) -> &[Vec<T>] {
        &self.levels
    }

    /// Flattened order as written.
    pub fn order(&self) -> &[T] {
        &self.order
    }

    pub fn is_strict(&self) -> bool {
        self.levels.iter().all(|g| g.len() == 1)
    }

    /// Flattened order with tie-groups resolved by `tie`.
    pub fn flattened(&self, tie: TieBreak) -> Vec<T> {
        match tie {
            TieBreak::AsWritten => self.order.clone(),
            TieBreak::AscendingId => self
                .levels
                .iter()
                .flat_map(|g| {
                    let mut g = g.clone();
                    g.sort();
                    g
                })
                .collect(),
        }
    }

    /// Zero-based position in the written flattening.
    pub fn position(&self, x: T) -> usize {
        self.position[x.index()]
    }

    /// Zero-based tie-group index; lower is better.
    pub fn level_of(&self, x: T) -> usize {
        self.level[x.index()]
    }

    /// Strict preference of `a` over `b` (members of one tie-group are equal).
    pub fn prefers(&self, a: T, b: T) -> bool {
        self.level_of(a) < self.level_of(b)
    }

    /// `a` at or above `b`.
    pub fn at_or_above(&self, a: T, b: T) -> bool {
        self.level_of(a) <= self.level_of(b)
    }

    pub fn first(&self) -> T {
        self.order[0]
    }

    pub fn last(&self) -> T {
        self.order[self.order.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GirlId;

    #[test]
    fn ties_compare_equal() {
        let p = PreferenceList::from_levels(vec![vec![GirlId(2), GirlId(1)], vec![GirlId(0)]], 3).unwrap();
        assert!(!p.prefers(GirlId(2), GirlId(1)));
        assert!(p.prefers(GirlId(1), GirlId(0)));
        assert_eq!(p.flattened(TieBreak::AscendingId), vec![GirlId(1), GirlId(2), GirlId(0)]);
        assert_eq!(p.flattened(TieBreak::AsWritten), vec![GirlId(2), GirlId(1), GirlId(0)]);
    }

    #[test]
    fn rejects_duplicates_and_gaps() {
        assert!(matches!(PreferenceList::strict(vec![GirlId(0), GirlId(0)]), Err(ModelError::DuplicateId(_))));
        assert!(matches!(
            PreferenceList::from_levels(vec![vec![GirlId(0)]], 2),
            Err(ModelError::IncompleteList { .. })
        ));
    }
}
