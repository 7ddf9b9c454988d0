//! Bitset subsets of a finite carrier `{0, .., n-1}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::Elem;

/// A subset of the element universe of one structure.
///
/// Two subsets compare equal only when they live in universes of the same
/// order and have the same members. Ordering is by universe order first and
/// then by the member words, which is arbitrary but total and deterministic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    order: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        Subset {
            order,
            words: vec![0; order.div_ceil(64)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for a in 0..order {
            s.insert(a);
        }
        s
    }

    pub fn singleton(order: usize, a: Elem) -> Self {
        let mut s = Self::empty(order);
        s.insert(a);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(order: usize, elems: I) -> Self {
        let mut s = Self::empty(order);
        for a in elems {
            s.insert(a);
        }
        s
    }

    /// Universe order `n`, not the number of members.
    pub fn universe(&self) -> usize {
        self.order
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.order && self.words[a / 64] & (1 << (a % 64)) != 0
    }

    /// Inserts `a`, returning `true` if it was not already present.
    ///
    /// Panics if `a` is outside the universe.
    pub fn insert(&mut self, a: Elem) -> bool {
        assert!(a < self.order, "element {a} outside universe of order {}", self.order);
        let (w, bit) = (a / 64, 1u64 << (a % 64));
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn remove(&mut self, a: Elem) -> bool {
        if a >= self.order {
            return false;
        }
        let (w, bit) = (a / 64, 1u64 << (a % 64));
        let present = self.words[w] & bit != 0;
        self.words[w] &= !bit;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.order
    }

    /// Members in increasing element order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).filter(move |&a| self.contains(a))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        Subset {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        Subset {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        Subset {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    /// Image of the subset under an element map given as a table.
    pub fn map(&self, order: usize, f: &[Elem]) -> Subset {
        Subset::from_elems(order, self.iter().map(|a| f[a]))
    }

    /// Preimage of the subset under an element map given as a table.
    pub fn preimage(&self, f: &[Elem]) -> Subset {
        Subset::from_elems(f.len(), (0..f.len()).filter(|&a| self.contains(f[a])))
    }

    fn check_universe(&self, other: &Subset) {
        assert_eq!(self.order, other.order, "subsets from different universes");
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset{:?}/{}", self.to_vec(), self.order)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_membership() {
        let mut s = Subset::empty(70);
        assert!(s.is_empty());
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(69));
        assert_eq!(s.to_vec(), vec![3, 69]);
        assert!(s.remove(3));
        assert!(!s.contains(3));
        assert_eq!(s.len(), 1);
        assert!(Subset::full(70).is_full());
    }

    #[test]
    fn preimage_and_map() {
        let f = vec![0, 0, 1, 1];
        let s = Subset::singleton(2, 1);
        assert_eq!(s.preimage(&f).to_vec(), vec![2, 3]);
        assert_eq!(Subset::from_elems(4, [1, 2]).map(2, &f).to_vec(), vec![0, 1]);
    }

    proptest! {
        #[test]
        fn lattice_laws(a in proptest::collection::vec(0usize..100, 0..40),
                        b in proptest::collection::vec(0usize..100, 0..40)) {
            let x = Subset::from_elems(100, a);
            let y = Subset::from_elems(100, b);
            let u = x.union(&y);
            let i = x.intersection(&y);
            prop_assert!(x.is_subset(&u) && y.is_subset(&u));
            prop_assert!(i.is_subset(&x) && i.is_subset(&y));
            prop_assert_eq!(u.len() + i.len(), x.len() + y.len());
            prop_assert_eq!(x.difference(&y).union(&i), x);
        }
    }
}
