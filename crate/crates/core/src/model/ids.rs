use serde::Serialize;
use std::fmt;

/// Shared behaviour of the two id newtypes.
pub trait Id: Copy + Eq + Ord + std::hash::Hash + fmt::Debug {
    /// Side prefix used in text output (`b` or `g`).
    const PREFIX: char;
    fn index(self) -> usize;
    fn from_index(index: usize) -> Self;

    /// Renders the id as `b3` / `g0` under the given label base.
    fn label(self, base: usize) -> String {
        format!("{}{}", Self::PREFIX, self.index() + base)
    }
}

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident, $prefix:literal) => {
        $(#[$doc])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl Id for $name {
            const PREFIX: char = $prefix;
            fn index(self) -> usize {
                self.0
            }
            fn from_index(index: usize) -> Self {
                $name(index)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}#{}", $prefix, self.0)
            }
        }
    };
}

id_type!(
    /// A boy (proposing side), stored as a zero-based index.
    BoyId,
    'b'
);
id_type!(
    /// A girl (receiving side), stored as a zero-based index.
    GirlId,
    'g'
);

pub fn boys(n: usize) -> impl Iterator<Item = BoyId> + Clone {
    (0..n).map(BoyId)
}

pub fn girls(n: usize) -> impl Iterator<Item = GirlId> + Clone {
    (0..n).map(GirlId)
}
