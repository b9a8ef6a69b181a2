//! Element identifiers and the ordered sets the minimizers work on.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Opaque ordinal of a specification element.
///
/// Ordinals are handed out in parse order, so the natural order of IDs is
/// source order. Metadata (kind, source line, origin) lives with the
/// specification that issued the ID.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl From<u32> for ElementId {
    fn from(v: u32) -> Self {
        ElementId(v)
    }
}

/// A set of element IDs, kept as a strictly increasing vector.
///
/// The sorted representation makes subset tests a single linear merge,
/// which is what the memoization cache relies on.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(Vec<ElementId>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(Vec::new())
    }

    /// Builds a set from arbitrary IDs; duplicates are dropped.
    pub fn from_ids<I, T>(ids: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<ElementId>,
    {
        let mut v: Vec<ElementId> = ids.into_iter().map(Into::into).collect();
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn insert(&mut self, id: ElementId) -> bool {
        match self.0.binary_search(&id) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, id);
                true
            }
        }
    }

    pub fn remove(&mut self, id: ElementId) -> bool {
        match self.0.binary_search(&id) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// `self \ {id}` without touching `self`.
    pub fn without(&self, id: ElementId) -> ElementSet {
        let mut out = self.clone();
        out.remove(id);
        out
    }

    pub fn with(&self, id: ElementId) -> ElementSet {
        let mut out = self.clone();
        out.insert(id);
        out
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ElementSet(out)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.iter().copied().filter(|x| other.contains(*x)).collect())
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.iter().copied().filter(|x| !other.contains(*x)).collect())
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|x| !other.contains(*x))
    }

    /// Linear-time subset test over the two sorted vectors.
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for x in &self.0 {
            for y in rest.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_superset(&self, other: &ElementSet) -> bool {
        other.is_subset(self)
    }

    /// Splits into `n` contiguous chunks whose sizes differ by at most one.
    /// Never returns empty chunks, so fewer than `n` come back when `n > len`.
    pub fn partition(&self, n: usize) -> Vec<ElementSet> {
        let n = n.max(1).min(self.len().max(1));
        let base = self.len() / n;
        let extra = self.len() % n;
        let mut out = Vec::with_capacity(n);
        let mut start = 0;
        for k in 0..n {
            let size = base + usize::from(k < extra);
            if size == 0 {
                continue;
            }
            out.push(ElementSet(self.0[start..start + size].to_vec()));
            start += size;
        }
        out
    }

    /// Splits at position `k`: the first `k` IDs and the rest.
    pub fn split_at(&self, k: usize) -> (ElementSet, ElementSet) {
        let (a, b) = self.0.split_at(k);
        (ElementSet(a.to_vec()), ElementSet(b.to_vec()))
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<T: IntoIterator<Item = ElementId>>(iter: T) -> Self {
        ElementSet::from_ids(iter)
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = ElementId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, ElementId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", id.0)?;
        }
        f.write_str("}")
    }
}
