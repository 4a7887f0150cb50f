//! Prime sets as fixed-width bitsets over prime indices.

use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet(FixedBitSet);

impl PrimeSet {
    pub fn empty(n: usize) -> Self {
        PrimeSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        PrimeSet(s)
    }

    pub fn from_indices(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn and(&self, other: &Self) -> Self {
        let mut s = self.0.clone();
        s.intersect_with(&other.0);
        PrimeSet(s)
    }

    pub fn or(&self, other: &Self) -> Self {
        let mut s = self.0.clone();
        s.union_with(&other.0);
        PrimeSet(s)
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut s = self.0.clone();
        s.difference_with(&other.0);
        PrimeSet(s)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = PrimeSet::from_indices(130, [0, 64, 129]);
        let b = PrimeSet::from_indices(130, [64, 100]);
        assert_eq!(a.and(&b).iter().collect::<Vec<_>>(), vec![64]);
        assert_eq!(a.or(&b).len(), 4);
        assert_eq!(a.minus(&b).iter().collect::<Vec<_>>(), vec![0, 129]);
        assert!(a.intersects(&b));
        assert!(PrimeSet::from_indices(130, [64]).is_subset(&a));
        assert_eq!(PrimeSet::full(70).len(), 70);
    }
}
