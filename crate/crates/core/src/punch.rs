//! Enumeration of all cores.
//!
//! [`punch`] finds one core `C0` of `E`, splits it into the elements whose
//! removal satisfies the criterion (`Cont`) and those whose removal does not
//! (`CI`), then recurses on `E \ {x}` for each `x` in `Cont`, passing `CI`
//! down as a base known to lie inside every core below. At the top level `CI`
//! is exactly the intersection of all cores, available after one core
//! computation and `|C0|` checks.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::element::ElementSet;
use crate::kernel::DEFAULT_STATE_CAP;
use crate::minimize::{min_with_base, CheckStats, Criterion, Memoized, Minimizer};
use crate::quickcore::quickcore_in;
use crate::reduce::Gr1Problem;
use crate::solver::Unrealizability;
use crate::Error;

/// Largest universe [`brute_force_all_cores`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AllCoresStats {
    pub actual_checks: u64,
    pub memo_hits: u64,
    /// Core computations actually executed; reused cores are not counted.
    pub core_computations: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllCoresResult {
    /// Distinct cores in discovery order.
    pub cores: Vec<ElementSet>,
    /// Intersection of all cores; `None` if the run stopped before it was
    /// known.
    pub intersection: Option<ElementSet>,
    /// False iff the run timed out.
    pub complete: bool,
    pub stats: AllCoresStats,
    /// Recursion nodes, when tracing was requested.
    pub trace: Vec<PunchNode>,
}

impl AllCoresResult {
    /// Cores as a set, for order-independent comparison.
    pub fn core_set(&self) -> BTreeSet<ElementSet> {
        self.cores.iter().cloned().collect()
    }
}

/// Arguments of one recursive call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunchNode {
    pub universe: ElementSet,
    pub known: ElementSet,
}

#[derive(Clone, Debug)]
pub struct PunchOptions {
    /// Answer a core computation with a previously found core inside the
    /// current universe when there is one.
    pub reuse_cores: bool,
    pub deadline: Option<Instant>,
    pub trace: bool,
}

impl Default for PunchOptions {
    fn default() -> Self {
        PunchOptions { reuse_cores: true, deadline: None, trace: false }
    }
}

struct Punch<'f, C: ?Sized, F> {
    c: &'f mut C,
    compute_core: F,
    opts: PunchOptions,
    cores: Vec<ElementSet>,
    seen: HashSet<ElementSet>,
    core_computations: u64,
    trace: Vec<PunchNode>,
    intersection: Option<ElementSet>,
}

impl<C, F> Punch<'_, C, F>
where
    C: Criterion + ?Sized,
    F: FnMut(&mut C, &ElementSet, &ElementSet) -> Result<ElementSet, Error>,
{
    fn core(&mut self, universe: &ElementSet, known: &ElementSet) -> Result<ElementSet, Error> {
        if self.opts.reuse_cores {
            if let Some(c) = self.cores.iter().find(|c| c.is_subset(universe)) {
                return Ok(c.clone());
            }
        }
        if self.opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        self.core_computations += 1;
        let core = (self.compute_core)(self.c, universe, known)?;
        self.c.learn(&core, true);
        if self.seen.insert(core.clone()) {
            self.cores.push(core.clone());
        }
        Ok(core)
    }

    fn run(&mut self, universe: &ElementSet, known: &ElementSet, top: bool) -> Result<(), Error> {
        if self.opts.trace {
            self.trace.push(PunchNode { universe: universe.clone(), known: known.clone() });
        }
        let c0 = self.core(universe, known)?;
        let mut ci = known.clone();
        let mut cont = Vec::new();
        for x in c0.difference(known).iter() {
            if self.c.check(&universe.without(x))? {
                cont.push(x);
            } else {
                ci.insert(x);
            }
        }
        if top {
            self.intersection = Some(ci.clone());
        }
        for x in cont {
            self.run(&universe.without(x), &ci, false)?;
        }
        Ok(())
    }
}

/// All cores of `universe` under `c`.
///
/// `compute_core(c, E', K)` must return a core of `E'` containing `K`. A
/// timeout, from the deadline or from the criterion, yields a partial result
/// with `complete = false`; other errors are returned.
pub fn punch<C, F>(universe: &ElementSet, c: &mut C, compute_core: F, opts: PunchOptions) -> Result<AllCoresResult, Error>
where
    C: Criterion + ?Sized,
    F: FnMut(&mut C, &ElementSet, &ElementSet) -> Result<ElementSet, Error>,
{
    let start = Instant::now();
    let before = c.stats();
    if !c.check(universe)? {
        return Err(Error::Precondition(format!("universe {universe} does not satisfy the criterion")));
    }
    let mut p = Punch {
        c,
        compute_core,
        opts,
        cores: Vec::new(),
        seen: HashSet::new(),
        core_computations: 0,
        trace: Vec::new(),
        intersection: None,
    };
    let complete = match p.run(universe, &ElementSet::new(), true) {
        Ok(()) => true,
        Err(Error::Timeout) => false,
        Err(e) => return Err(e),
    };
    let stats = delta(before, p.c.stats(), p.core_computations, start.elapsed());
    Ok(AllCoresResult { cores: p.cores, intersection: p.intersection, complete, stats, trace: p.trace })
}

fn delta(before: CheckStats, after: CheckStats, core_computations: u64, elapsed: Duration) -> AllCoresStats {
    AllCoresStats {
        actual_checks: after.actual_checks - before.actual_checks,
        memo_hits: after.memo_hits - before.memo_hits,
        core_computations,
        elapsed_ms: elapsed.as_millis() as u64,
    }
}

/// Core computation by DDMin with a base: `K ∪ MinWBase(ddmin, K, E' \ K)`.
pub fn ddmin_core<C: Criterion + ?Sized>(c: &mut C, universe: &ElementSet, known: &ElementSet) -> Result<ElementSet, Error> {
    let added = min_with_base(Minimizer::DdMin, known, &universe.difference(known), c)?;
    Ok(known.union(&added))
}

#[derive(Clone, Debug)]
pub struct ProblemOptions {
    pub memo: bool,
    pub state_cap: usize,
    pub deadline: Option<Instant>,
    pub trace: bool,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions { memo: true, state_cap: DEFAULT_STATE_CAP, deadline: None, trace: false }
    }
}

fn criterion<'a>(problem: &'a Gr1Problem, opts: &ProblemOptions) -> Memoized<Unrealizability<'a>> {
    let crit = Unrealizability::new(problem).with_state_cap(opts.state_cap).with_deadline(opts.deadline);
    Memoized::with_cache(crit, opts.memo)
}

fn require_unrealizable(c: &mut impl Criterion, universe: &ElementSet) -> Result<(), Error> {
    if c.check(universe)? {
        Ok(())
    } else {
        Err(Error::Realizable)
    }
}

fn punch_options(opts: &ProblemOptions) -> PunchOptions {
    PunchOptions { reuse_cores: opts.memo, deadline: opts.deadline, trace: opts.trace }
}

/// Punch with DDMin-based core computation.
pub fn punch_ud(problem: &Gr1Problem, opts: &ProblemOptions) -> Result<AllCoresResult, Error> {
    let mut c = criterion(problem, opts);
    let universe = problem.guarantee_universe();
    require_unrealizable(&mut c, universe)?;
    punch(universe, &mut c, ddmin_core, punch_options(opts))
}

/// Punch with staged (QuickCore) core computation.
pub fn punch_qc(problem: &Gr1Problem, opts: &ProblemOptions) -> Result<AllCoresResult, Error> {
    let mut c = criterion(problem, opts);
    let universe = problem.guarantee_universe();
    require_unrealizable(&mut c, universe)?;
    let compute = |c: &mut Memoized<Unrealizability<'_>>, e: &ElementSet, k: &ElementSet| {
        Ok(k.union(&quickcore_in(c, k, &e.difference(k))?.added))
    };
    punch(universe, &mut c, compute, punch_options(opts))
}

/// Intersection of all cores from one core and `|C0|` checks.
pub fn core_intersection<C, F>(universe: &ElementSet, c: &mut C, mut compute_core: F) -> Result<ElementSet, Error>
where
    C: Criterion + ?Sized,
    F: FnMut(&mut C, &ElementSet, &ElementSet) -> Result<ElementSet, Error>,
{
    let c0 = compute_core(c, universe, &ElementSet::new())?;
    let mut out = ElementSet::new();
    for x in c0.iter() {
        if !c.check(&universe.without(x))? {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Top-down search: every satisfying subset is expanded into its
/// satisfying one-element removals; a satisfying set none of whose removals
/// satisfies is a core. Fully explored subsets are not revisited.
pub fn td_all_cores<C: Criterion + ?Sized>(universe: &ElementSet, c: &mut C, deadline: Option<Instant>) -> Result<AllCoresResult, Error> {
    let start = Instant::now();
    let before = c.stats();
    if !c.check(universe)? {
        return Err(Error::Precondition(format!("universe {universe} does not satisfy the criterion")));
    }
    let mut finished = HashSet::new();
    let mut cores = Vec::new();
    let complete = match td(universe, c, deadline, &mut finished, &mut cores) {
        Ok(()) => true,
        Err(Error::Timeout) => false,
        Err(e) => return Err(e),
    };
    let intersection = if complete { Some(intersect_all(&cores, universe)) } else { None };
    let stats = delta(before, c.stats(), 0, start.elapsed());
    Ok(AllCoresResult { cores, intersection, complete, stats, trace: Vec::new() })
}

fn td<C: Criterion + ?Sized>(
    set: &ElementSet,
    c: &mut C,
    deadline: Option<Instant>,
    finished: &mut HashSet<ElementSet>,
    cores: &mut Vec<ElementSet>,
) -> Result<(), Error> {
    if finished.contains(set) {
        return Ok(());
    }
    if deadline.is_some_and(|d| Instant::now() >= d) {
        return Err(Error::Timeout);
    }
    let mut minimal = true;
    for x in set.iter() {
        let child = set.without(x);
        if c.check(&child)? {
            minimal = false;
            td(&child, c, deadline, finished, cores)?;
        }
    }
    if minimal {
        cores.push(set.clone());
    }
    finished.insert(set.clone());
    Ok(())
}

/// TD over the guarantees of an unrealizable problem.
pub fn td_problem(problem: &Gr1Problem, opts: &ProblemOptions) -> Result<AllCoresResult, Error> {
    let mut c = criterion(problem, opts);
    let universe = problem.guarantee_universe();
    require_unrealizable(&mut c, universe)?;
    td_all_cores(universe, &mut c, opts.deadline)
}

fn intersect_all(cores: &[ElementSet], universe: &ElementSet) -> ElementSet {
    cores.iter().fold(universe.clone(), |acc, c| acc.intersection(c))
}

/// Every core, by evaluating the criterion on all `2^|E|` subsets.
///
/// Cores are returned in order of increasing subset bitmask.
pub fn brute_force_all_cores<C: Criterion + ?Sized>(universe: &ElementSet, c: &mut C) -> Result<Vec<ElementSet>, Error> {
    let n = universe.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::UniverseTooLarge { size: n, limit: BRUTE_FORCE_LIMIT });
    }
    let ids = universe.as_slice();
    let subset = |mask: usize| (0..n).filter(|b| mask >> b & 1 == 1).map(|b| ids[b]).collect::<ElementSet>();
    let mut sat = vec![false; 1 << n];
    for (mask, v) in sat.iter_mut().enumerate() {
        *v = c.check(&subset(mask))?;
    }
    Ok((0..1usize << n)
        .filter(|&m| sat[m] && (0..n).all(|b| m >> b & 1 == 0 || !sat[m & !(1 << b)]))
        .map(subset)
        .collect())
}

/// Brute-force cores of the guarantees of a problem.
pub fn oracle_all_cores(problem: &Gr1Problem, state_cap: usize) -> Result<Vec<ElementSet>, Error> {
    let mut c = Unrealizability::new(problem).with_state_cap(state_cap);
    brute_force_all_cores(problem.guarantee_universe(), &mut c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimize::FnCriterion;

    fn set(v: &[u32]) -> ElementSet {
        ElementSet::from_ids(v.iter().copied())
    }

    fn sets(v: &[&[u32]]) -> BTreeSet<ElementSet> {
        v.iter().map(|s| set(s)).collect()
    }

    fn one_or_two_three(s: &ElementSet) -> bool {
        s.contains(1.into()) || set(&[2, 3]).is_subset(s)
    }

    #[test]
    fn two_cores_with_empty_intersection() {
        let e = set(&[1, 2, 3, 4]);
        let mut c = Memoized::new(FnCriterion(one_or_two_three));
        let r = punch(&e, &mut c, ddmin_core, PunchOptions::default()).unwrap();
        assert_eq!(r.core_set(), sets(&[&[1], &[2, 3]]));
        assert_eq!(r.intersection, Some(ElementSet::new()));
        assert!(r.complete);
        let bf = brute_force_all_cores(&e, &mut FnCriterion(one_or_two_three)).unwrap();
        assert_eq!(bf.into_iter().collect::<BTreeSet<_>>(), sets(&[&[1], &[2, 3]]));
    }

    #[test]
    fn unique_core_exits_after_one_computation() {
        let e = set(&[1, 2, 3, 4]);
        let mut c = FnCriterion(|s: &ElementSet| set(&[2, 4]).is_subset(s));
        let r = punch(&e, &mut c, ddmin_core, PunchOptions { trace: true, ..Default::default() }).unwrap();
        assert_eq!(r.cores, vec![set(&[2, 4])]);
        assert_eq!(r.intersection, Some(set(&[2, 4])));
        assert_eq!(r.stats.core_computations, 1);
        assert_eq!(r.trace.len(), 1);
        let ci = core_intersection(&e, &mut c, ddmin_core).unwrap();
        assert_eq!(ci, set(&[2, 4]));
    }

    #[test]
    fn disjoint_cores_have_empty_intersection() {
        let e = set(&[1, 2, 3, 4]);
        let mut c = FnCriterion(|s: &ElementSet| set(&[1, 2]).is_subset(s) || set(&[3, 4]).is_subset(s));
        assert_eq!(core_intersection(&e, &mut c, ddmin_core).unwrap(), ElementSet::new());
    }

    #[test]
    fn td_finds_singletons() {
        let mut c = FnCriterion(|s: &ElementSet| !s.is_empty());
        let r = td_all_cores(&set(&[1, 2]), &mut c, None).unwrap();
        assert_eq!(r.core_set(), sets(&[&[1], &[2]]));
        assert_eq!(r.intersection, Some(ElementSet::new()));
    }

    #[test]
    fn brute_force_rejects_large_universes() {
        let e: ElementSet = (0..17u32).map(crate::ElementId).collect();
        let r = brute_force_all_cores(&e, &mut FnCriterion(|_: &ElementSet| true));
        assert_eq!(r, Err(Error::UniverseTooLarge { size: 17, limit: 16 }));
    }

    #[test]
    fn expired_deadline_gives_partial_result() {
        let e = set(&[1, 2, 3, 4]);
        let mut c = FnCriterion(one_or_two_three);
        let opts = PunchOptions { deadline: Some(Instant::now()), ..Default::default() };
        let r = punch(&e, &mut c, ddmin_core, opts).unwrap();
        assert!(!r.complete);
        assert!(r.cores.is_empty());
        assert_eq!(r.intersection, None);
    }
}
