//! Staged computation of one unrealizable core.
//!
//! Guarantees are minimized by type: justices first, then safeties with
//! DDMin against a base, then initial guarantees by a linear scan that
//! reuses a single winning region. Initial guarantees do not influence the
//! winning region, only the final `sys_win` test, which is why one
//! fixed-point computation suffices for the whole scan.
//!
//! If the specification is already unrealizable without any justice
//! guarantee, the justice assumptions are irrelevant to every remaining
//! check (they only matter inside the winning condition, and with no
//! justice guarantee that condition is a tautology), so they are dropped to
//! shrink each game.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::element::{ElementId, ElementSet};
use crate::kernel::DEFAULT_STATE_CAP;
use crate::minimize::{min_with_base, CheckStats, Criterion, Memoized, Minimizer};
use crate::reduce::Gr1Problem;
use crate::solver::{sys_win, winning_region, Unrealizability};
use crate::spec::ElementKind;
use crate::Error;

#[derive(Clone, Debug)]
pub struct Options {
    pub memo: bool,
    pub state_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for Options {
    fn default() -> Self {
        Options { memo: true, state_cap: DEFAULT_STATE_CAP, deadline: None }
    }
}

/// One step of the initial-guarantee scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanStep {
    pub candidate: ElementId,
    /// Guarantees of the game evaluated without `candidate`.
    pub guarantees: ElementSet,
    /// Whether the system still wins without `candidate`; if so it is kept.
    pub sys_wins: bool,
}

/// Result of the staged minimization of `A` against a base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staged {
    /// `A' ⊆ A` such that `base ∪ A'` is unrealizable and locally minimal
    /// over `A`.
    pub added: ElementSet,
    /// Whether the justice assumptions were dropped after stage 1.
    pub justice_dropped: bool,
    pub scan: Vec<ScanStep>,
}

#[derive(Clone, Debug)]
pub struct QuickCoreRun {
    pub core: ElementSet,
    pub justice_dropped: bool,
    pub scan: Vec<ScanStep>,
    /// Realizability checks, excluding the initial-guarantee scan.
    pub stats: CheckStats,
    pub elapsed: Duration,
}

impl QuickCoreRun {
    /// Realizability checks plus `sys_win` tests of the scan.
    pub fn total_checks(&self) -> u64 {
        self.stats.actual_checks + self.scan.len() as u64
    }
}

/// Minimization stage an element belongs to. A pattern induces initial,
/// safety and justice assertions; it is staged with the justices.
pub fn stage_of(problem: &Gr1Problem, id: ElementId) -> ElementKind {
    problem.kind_of(id).unwrap_or(ElementKind::Ini)
}

fn split_by_stage(problem: &Gr1Problem, a: &ElementSet) -> [ElementSet; 3] {
    let pick = |k| a.iter().filter(|&id| stage_of(problem, id) == k).collect::<ElementSet>();
    [pick(ElementKind::Ini), pick(ElementKind::Alw), pick(ElementKind::AlwEv)]
}

/// A core of all guarantees of an unrealizable problem.
pub fn quickcore(problem: &Gr1Problem, opts: &Options) -> Result<QuickCoreRun, Error> {
    quickcore_with_base(problem, &ElementSet::new(), problem.guarantee_universe(), opts)
}

/// Staged minimization of `a` against `base`; `core` in the result is
/// `base ∪ A'`.
pub fn quickcore_with_base(
    problem: &Gr1Problem,
    base: &ElementSet,
    a: &ElementSet,
    opts: &Options,
) -> Result<QuickCoreRun, Error> {
    let start = Instant::now();
    let crit = Unrealizability::new(problem).with_state_cap(opts.state_cap).with_deadline(opts.deadline);
    let mut c = Memoized::with_cache(crit, opts.memo);
    if !c.check(&base.union(a))? {
        return Err(Error::Realizable);
    }
    let staged = quickcore_in(&mut c, base, a)?;
    Ok(QuickCoreRun {
        core: base.union(&staged.added),
        justice_dropped: staged.justice_dropped,
        scan: staged.scan,
        stats: c.stats(),
        elapsed: start.elapsed(),
    })
}

/// Staged minimization over a caller-owned criterion, so that its cache can
/// be shared with other computations.
///
/// Requires `base ∩ a = ∅` and `base ∪ a` unrealizable. The assumptions of
/// the criterion are restored before returning.
pub fn quickcore_in(c: &mut Memoized<Unrealizability<'_>>, base: &ElementSet, a: &ElementSet) -> Result<Staged, Error> {
    if !base.is_disjoint(a) {
        return Err(Error::Precondition(format!("base {base} overlaps {a}")));
    }
    if !c.check(&base.union(a))? {
        return Err(Error::Precondition(format!("{} is realizable", base.union(a))));
    }
    let problem = c.inner().problem();
    let [ini, saf, just] = split_by_stage(problem, a);

    let without_justice = base.union(&ini).union(&saf);
    let mut justice_dropped = false;
    let saved = c.inner().assumptions().clone();
    let jc = if !c.check(&without_justice)? {
        min_with_base(Minimizer::DdMin, &without_justice, &just, c)?
    } else {
        // With justice guarantees in the base the winning condition is not
        // a tautology, so the assumptions must stay.
        if base.iter().all(|id| stage_of(problem, id) != ElementKind::AlwEv) {
            let kept = saved.iter().filter(|&id| problem.kind_of(id) != Some(ElementKind::AlwEv)).collect();
            c.inner_mut().set_assumptions(kept);
            justice_dropped = true;
        }
        ElementSet::new()
    };

    let rest = stages_two_and_three(c, base, &ini, &saf, &jc);
    if justice_dropped {
        c.inner_mut().set_assumptions(saved);
    }
    let (tc, ic, scan) = rest?;
    Ok(Staged { added: ic.union(&tc).union(&jc), justice_dropped, scan })
}

type StageResult = (ElementSet, ElementSet, Vec<ScanStep>);

fn stages_two_and_three(
    c: &mut Memoized<Unrealizability<'_>>,
    base: &ElementSet,
    ini: &ElementSet,
    saf: &ElementSet,
    jc: &ElementSet,
) -> Result<StageResult, Error> {
    let tc = min_with_base(Minimizer::DdMin, &base.union(ini).union(jc), saf, c)?;

    let crit = c.inner();
    if crit.deadline().is_some_and(|d| Instant::now() >= d) {
        return Err(Error::Timeout);
    }
    let fixed = base.union(&tc).union(jc);
    let game = crit.game(&fixed.union(ini))?;
    let w = winning_region(&game);
    let mut kept = ini.clone();
    let mut scan = Vec::with_capacity(ini.len());
    for i in ini.iter() {
        let guarantees = fixed.union(&kept.without(i));
        let theta_s = game.sys_initial_where(|id| guarantees.contains(id));
        let sys_wins = sys_win(&game, game.env_initial(), &theta_s, &w);
        if !sys_wins {
            kept.remove(i);
        }
        scan.push(ScanStep { candidate: i, guarantees, sys_wins });
    }
    Ok((tc, kept, scan))
}
