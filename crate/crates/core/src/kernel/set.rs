use fixedbitset::FixedBitSet;

/// A set of state indices, stored as a bit vector over the whole space.
///
/// All binary operations require both operands to range over the same
/// number of states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    bits: FixedBitSet,
}

impl StateSet {
    pub fn empty(size: usize) -> Self {
        StateSet { bits: FixedBitSet::with_capacity(size) }
    }

    pub fn full(size: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(size);
        bits.insert_range(..);
        StateSet { bits }
    }

    pub fn from_indices(size: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(size);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(size);
        for i in 0..size {
            if f(i) {
                s.bits.insert(i);
            }
        }
        s
    }

    /// Number of states the set ranges over.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        StateSet { bits }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        StateSet { bits }
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        StateSet { bits }
    }

    pub fn complement(&self) -> StateSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        StateSet { bits }
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.bits.is_disjoint(&other.bits)
    }
}

impl std::fmt::Debug for StateSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StateSet({}/{}: ", self.len(), self.universe())?;
        f.debug_set().entries(self.iter()).finish()?;
        f.write_str(")")
    }
}
