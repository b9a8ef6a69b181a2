use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::element::ElementSet;
use crate::Error;

/// A monotonic predicate over subsets of a universe: once a set satisfies
/// it, every superset does.
///
/// Checks may fail (a realizability check can hit the state cap, a run can
/// time out), so they return `Result`.
pub trait Criterion {
    fn check(&mut self, set: &ElementSet) -> Result<bool, Error>;

    /// Records a verdict obtained elsewhere (e.g. a core found by another
    /// route). Criteria without a cache ignore it.
    fn learn(&mut self, _set: &ElementSet, _verdict: bool) {}

    fn stats(&self) -> CheckStats {
        CheckStats::default()
    }
}

impl<C: Criterion + ?Sized> Criterion for &mut C {
    fn check(&mut self, set: &ElementSet) -> Result<bool, Error> {
        (**self).check(set)
    }

    fn learn(&mut self, set: &ElementSet, verdict: bool) {
        (**self).learn(set, verdict)
    }

    fn stats(&self) -> CheckStats {
        (**self).stats()
    }
}

/// Adapts a plain closure.
pub struct FnCriterion<F>(pub F);

impl<F: FnMut(&ElementSet) -> bool> Criterion for FnCriterion<F> {
    fn check(&mut self, set: &ElementSet) -> Result<bool, Error> {
        Ok((self.0)(set))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    /// Calls to `check`.
    pub queries: u64,
    /// Calls answered by running the underlying criterion.
    pub actual_checks: u64,
    /// Calls answered from the cache.
    pub memo_hits: u64,
}

/// Prior positive and negative verdicts of a monotonic criterion.
///
/// Both collections are bucketed by set size. A positive answer needs a
/// stored positive subset, so only buckets no larger than the query are
/// scanned; a negative answer needs a stored negative superset, so only
/// buckets no smaller are scanned.
#[derive(Clone, Debug, Default)]
pub struct MemoCache {
    positive: BTreeMap<usize, Vec<ElementSet>>,
    negative: BTreeMap<usize, Vec<ElementSet>>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Some(true)` if a stored positive is a subset of `set`, `Some(false)`
    /// if a stored negative is a superset, `None` otherwise.
    pub fn query(&self, set: &ElementSet) -> Option<bool> {
        let n = set.len();
        if self.positive.range(..=n).flat_map(|(_, v)| v).any(|p| p.is_subset(set)) {
            return Some(true);
        }
        if self.negative.range(n..).flat_map(|(_, v)| v).any(|q| set.is_subset(q)) {
            return Some(false);
        }
        None
    }

    pub fn insert(&mut self, set: &ElementSet, verdict: bool) {
        let bucket = if verdict { &mut self.positive } else { &mut self.negative };
        let v = bucket.entry(set.len()).or_default();
        if !v.contains(set) {
            v.push(set.clone());
        }
    }

    pub fn positives(&self) -> impl Iterator<Item = &ElementSet> {
        self.positive.values().flatten()
    }

    pub fn negatives(&self) -> impl Iterator<Item = &ElementSet> {
        self.negative.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.positives().count() + self.negatives().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Counts checks and, unless disabled, answers from a [`MemoCache`] before
/// consulting the wrapped criterion.
pub struct Memoized<C> {
    inner: C,
    cache: Option<MemoCache>,
    stats: CheckStats,
}

impl<C: Criterion> Memoized<C> {
    pub fn new(inner: C) -> Self {
        Memoized { inner, cache: Some(MemoCache::new()), stats: CheckStats::default() }
    }

    /// Pass-through that only counts.
    pub fn without_cache(inner: C) -> Self {
        Memoized { inner, cache: None, stats: CheckStats::default() }
    }

    pub fn with_cache(inner: C, enabled: bool) -> Self {
        if enabled {
            Self::new(inner)
        } else {
            Self::without_cache(inner)
        }
    }

    pub fn cache(&self) -> Option<&MemoCache> {
        self.cache.as_ref()
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    pub fn inner_mut(&mut self) -> &mut C {
        &mut self.inner
    }

    pub fn into_inner(self) -> C {
        self.inner
    }
}

impl<C: Criterion> Criterion for Memoized<C> {
    fn check(&mut self, set: &ElementSet) -> Result<bool, Error> {
        self.stats.queries += 1;
        if let Some(v) = self.cache.as_ref().and_then(|c| c.query(set)) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        let v = self.inner.check(set)?;
        self.stats.actual_checks += 1;
        if let Some(c) = self.cache.as_mut() {
            c.insert(set, v);
        }
        Ok(v)
    }

    fn learn(&mut self, set: &ElementSet, verdict: bool) {
        if let Some(c) = self.cache.as_mut() {
            c.insert(set, verdict);
        }
    }

    fn stats(&self) -> CheckStats {
        self.stats
    }
}

/// Fails every check with [`Error::Timeout`] once the deadline has passed.
pub struct WithDeadline<C> {
    pub inner: C,
    pub deadline: Option<Instant>,
}

impl<C: Criterion> Criterion for WithDeadline<C> {
    fn check(&mut self, set: &ElementSet) -> Result<bool, Error> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        self.inner.check(set)
    }

    fn learn(&mut self, set: &ElementSet, verdict: bool) {
        self.inner.learn(set, verdict)
    }

    fn stats(&self) -> CheckStats {
        self.inner.stats()
    }
}

/// `check(X)` becomes `inner.check(base ∪ X)`.
pub struct WithBase<'a, C: ?Sized> {
    inner: &'a mut C,
    base: &'a ElementSet,
}

impl<'a, C: Criterion + ?Sized> WithBase<'a, C> {
    pub fn new(inner: &'a mut C, base: &'a ElementSet) -> Self {
        WithBase { inner, base }
    }
}

impl<C: Criterion + ?Sized> Criterion for WithBase<'_, C> {
    fn check(&mut self, set: &ElementSet) -> Result<bool, Error> {
        self.inner.check(&self.base.union(set))
    }

    fn learn(&mut self, set: &ElementSet, verdict: bool) {
        self.inner.learn(&self.base.union(set), verdict)
    }

    fn stats(&self) -> CheckStats {
        self.inner.stats()
    }
}
