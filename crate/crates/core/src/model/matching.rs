use super::ids::{BoyId, GirlId};
use super::ModelError;
use serde::Serialize;

/// An injective, possibly partial, assignment of boys to girls.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    boy_to_girl: Vec<Option<GirlId>>,
    girl_to_boy: Vec<Option<BoyId>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { boy_to_girl: vec![None; n], girl_to_boy: vec![None; n] }
    }

    /// Builds a matching from pairs, rejecting any reuse of a boy or girl.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (BoyId, GirlId)>) -> Result<Self, ModelError> {
        let mut m = Matching::empty(n);
        for (b, g) in pairs {
            m.pair(b, g)?;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.boy_to_girl.len()
    }

    /// Adds a pair; both sides must be free.
    pub fn pair(&mut self, b: BoyId, g: GirlId) -> Result<(), ModelError> {
        if b.0 >= self.n() || g.0 >= self.n() {
            return Err(ModelError::UnknownId(format!("{b:?}/{g:?}")));
        }
        if self.boy_to_girl[b.0].is_some() || self.girl_to_boy[g.0].is_some() {
            return Err(ModelError::NotInjective);
        }
        self.boy_to_girl[b.0] = Some(g);
        self.girl_to_boy[g.0] = Some(b);
        Ok(())
    }

    /// Moves `b` to `g`, returning whoever held `g` (now free).
    pub fn reassign(&mut self, b: BoyId, g: GirlId) -> Option<BoyId> {
        if let Some(old) = self.boy_to_girl[b.0].take() {
            self.girl_to_boy[old.0] = None;
        }
        let prev = self.girl_to_boy[g.0].replace(b);
        if let Some(p) = prev {
            self.boy_to_girl[p.0] = None;
        }
        self.boy_to_girl[b.0] = Some(g);
        prev
    }

    pub fn unpair_boy(&mut self, b: BoyId) -> Option<GirlId> {
        let g = self.boy_to_girl[b.0].take()?;
        self.girl_to_boy[g.0] = None;
        Some(g)
    }

    pub fn girl_of(&self, b: BoyId) -> Option<GirlId> {
        self.boy_to_girl[b.0]
    }

    pub fn boy_of(&self, g: GirlId) -> Option<BoyId> {
        self.girl_to_boy[g.0]
    }

    pub fn len(&self) -> usize {
        self.boy_to_girl.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complete(&self) -> bool {
        self.boy_to_girl.iter().all(Option::is_some)
    }

    /// Pairs in ascending boy order.
    pub fn pairs(&self) -> impl Iterator<Item = (BoyId, GirlId)> + '_ {
        self.boy_to_girl.iter().enumerate().filter_map(|(b, g)| g.map(|g| (BoyId(b), g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reassign_frees_previous_holder() {
        let mut m = Matching::from_pairs(2, [(BoyId(0), GirlId(0))]).unwrap();
        assert_eq!(m.reassign(BoyId(1), GirlId(0)), Some(BoyId(0)));
        assert_eq!(m.girl_of(BoyId(0)), None);
        assert_eq!(m.boy_of(GirlId(0)), Some(BoyId(1)));
    }

    #[test]
    fn duplicate_pair_rejected() {
        assert!(Matching::from_pairs(2, [(BoyId(0), GirlId(0)), (BoyId(1), GirlId(0))]).is_err());
    }
}
