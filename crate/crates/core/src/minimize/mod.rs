//! Domain-agnostic minimization of monotonic criteria.
//!
//! Every minimizer takes a universe `E` with `c(E)` true and returns a core:
//! a subset `R` with `c(R)` and `!c(R \ {x})` for each `x` in `R`. All
//! iteration follows element-ID order, so results are deterministic.

mod criterion;

use serde::{Deserialize, Serialize};

use crate::element::ElementSet;
use crate::Error;

pub use criterion::{CheckStats, Criterion, FnCriterion, MemoCache, Memoized, WithBase, WithDeadline};

/// Minimization algorithm selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Minimizer {
    DdMin,
    QuickXplain,
    Linear,
}

impl Minimizer {
    pub const ALL: [Minimizer; 3] = [Minimizer::DdMin, Minimizer::QuickXplain, Minimizer::Linear];

    pub fn run<C: Criterion + ?Sized>(self, universe: &ElementSet, c: &mut C) -> Result<ElementSet, Error> {
        match self {
            Minimizer::DdMin => ddmin(universe, c),
            Minimizer::QuickXplain => quickxplain(universe, c),
            Minimizer::Linear => linear_min(universe, c),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Minimizer::DdMin => "ddmin",
            Minimizer::QuickXplain => "quickxplain",
            Minimizer::Linear => "linear",
        }
    }
}

fn require<C: Criterion + ?Sized>(c: &mut C, set: &ElementSet, what: &str) -> Result<(), Error> {
    if c.check(set)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} {set} does not satisfy the criterion")))
    }
}

/// Delta debugging, starting from two parts.
pub fn ddmin<C: Criterion + ?Sized>(universe: &ElementSet, c: &mut C) -> Result<ElementSet, Error> {
    require(c, universe, "universe")?;
    ddmin_from(universe.clone(), 2, c)
}

/// Recursion of [`ddmin`] without the entry check; expects `c(set)`.
fn ddmin_from<C: Criterion + ?Sized>(mut set: ElementSet, mut n: usize, c: &mut C) -> Result<ElementSet, Error> {
    loop {
        if set.is_empty() {
            return Ok(set);
        }
        let parts = set.partition(n);
        let mut next = None;
        for part in &parts {
            // A one-element set has a single part equal to itself.
            if part.len() < set.len() && c.check(part)? {
                next = Some((part.clone(), 2));
                break;
            }
        }
        if next.is_none() {
            for part in &parts {
                let rest = set.difference(part);
                if c.check(&rest)? {
                    next = Some((rest, n.saturating_sub(1).max(2)));
                    break;
                }
            }
        }
        match next {
            Some((s, k)) => (set, n) = (s, k),
            None if n >= set.len() => return Ok(set),
            None => n = set.len().min(2 * n),
        }
    }
}

/// Junker's QuickXplain with contiguous halving.
pub fn quickxplain<C: Criterion + ?Sized>(universe: &ElementSet, c: &mut C) -> Result<ElementSet, Error> {
    require(c, universe, "universe")?;
    let empty = ElementSet::new();
    if c.check(&empty)? {
        return Ok(empty);
    }
    qx(&empty, false, universe, c)
}

/// Minimal subset of `candidates` that, added to `background`, satisfies
/// `c`. `delta_nonempty` records whether the last addition to `background`
/// was nonempty; only then can `background` alone already suffice.
fn qx<C: Criterion + ?Sized>(
    background: &ElementSet,
    delta_nonempty: bool,
    candidates: &ElementSet,
    c: &mut C,
) -> Result<ElementSet, Error> {
    if delta_nonempty && c.check(background)? {
        return Ok(ElementSet::new());
    }
    if candidates.len() == 1 {
        return Ok(candidates.clone());
    }
    let (c1, c2) = candidates.split_at(candidates.len() / 2);
    let d2 = qx(&background.union(&c1), !c1.is_empty(), &c2, c)?;
    let d1 = qx(&background.union(&d2), !d2.is_empty(), &c1, c)?;
    Ok(d1.union(&d2))
}

/// Removes each element in turn iff the criterion still holds without it.
pub fn linear_min<C: Criterion + ?Sized>(universe: &ElementSet, c: &mut C) -> Result<ElementSet, Error> {
    require(c, universe, "universe")?;
    linear_from(universe.clone(), c)
}

fn linear_from<C: Criterion + ?Sized>(mut kept: ElementSet, c: &mut C) -> Result<ElementSet, Error> {
    for x in kept.clone().iter() {
        let without = kept.without(x);
        if c.check(&without)? {
            kept = without;
        }
    }
    Ok(kept)
}

/// Locally minimal `A' ⊆ a` such that `base ∪ A'` satisfies `c`, obtained
/// by running `alg` on `a` against `X ↦ c(base ∪ X)`.
pub fn min_with_base<C: Criterion + ?Sized>(
    alg: Minimizer,
    base: &ElementSet,
    a: &ElementSet,
    c: &mut C,
) -> Result<ElementSet, Error> {
    if !base.is_disjoint(a) {
        return Err(Error::Precondition(format!("base {base} overlaps {a}")));
    }
    alg.run(a, &mut WithBase::new(c, base))
}

/// Whether `set` is a core: it satisfies `c` and no one-element removal
/// does. Costs `|set| + 1` checks.
pub fn is_core<C: Criterion + ?Sized>(set: &ElementSet, c: &mut C) -> Result<bool, Error> {
    if !c.check(set)? {
        return Ok(false);
    }
    for x in set.iter() {
        if c.check(&set.without(x))? {
            return Ok(false);
        }
    }
    Ok(true)
}
