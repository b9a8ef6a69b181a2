//! Winning regions and realizability checks.
//!
//! The winning region is the standard three-nested fixed point
//!
//! ```text
//! W = nu Z. /\_j mu Y. \/_i nu X. (Js[j] & cpre(Z)) | cpre(Y) | (!Je[i] & cpre(X))
//! ```
//!
//! An empty justice list on either side stands for the single justice
//! "all states". Without justice guarantees the winning condition is a
//! tautology and `W` collapses to the safety-winning states.

use std::time::Instant;

use thiserror::Error;

use crate::element::ElementSet;
use crate::kernel::{GameStructure, KernelError, StateSet, DEFAULT_STATE_CAP};
use crate::minimize::Criterion;
use crate::reduce::{Gr1Problem, ReduceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

pub fn winning_region(game: &GameStructure) -> StateSet {
    let n = game.space().size();
    let full = StateSet::full(n);
    let sys_justice: Vec<StateSet> =
        if game.sys_justice().is_empty() { vec![full.clone()] } else { game.sys_justice().to_vec() };
    let env_violation: Vec<StateSet> = if game.env_justice().is_empty() {
        vec![StateSet::empty(n)]
    } else {
        game.env_justice().iter().map(StateSet::complement).collect()
    };

    let mut z = full.clone();
    loop {
        let cpre_z = game.cpre(&z);
        let mut z_next = full.clone();
        for js in &sys_justice {
            let reach_goal = js.intersection(&cpre_z);
            let mut y = StateSet::empty(n);
            loop {
                let start = reach_goal.union(&game.cpre(&y));
                let mut y_next = StateSet::empty(n);
                for violated in &env_violation {
                    let mut x = full.clone();
                    loop {
                        let x_next = start.union(&violated.intersection(&game.cpre(&x)));
                        if x_next == x {
                            break;
                        }
                        x = x_next;
                    }
                    y_next = y_next.union(&x);
                }
                if y_next == y {
                    break;
                }
                y = y_next;
            }
            z_next = z_next.intersection(&y);
        }
        if z_next == z {
            return z;
        }
        z = z_next;
    }
}

/// Whether every initial environment assignment in `env_initial` extends to
/// some state in `sys_initial ∩ region`.
///
/// `env_initial` ranges over environment assignments of `game`'s space.
pub fn sys_win(game: &GameStructure, env_initial: &StateSet, sys_initial: &StateSet, region: &StateSet) -> bool {
    let reachable = game.space().exists_sys(&sys_initial.intersection(region));
    env_initial.is_subset(&reachable)
}

/// Realizability of a game: the system can answer every initial environment
/// choice with a winning initial state.
pub fn game_is_realizable(game: &GameStructure) -> bool {
    let w = winning_region(game);
    sys_win(game, game.env_initial(), &game.sys_initial(), &w)
}

/// Realizability of the specification restricted to the given assumption
/// and guarantee IDs.
pub fn is_realizable(problem: &Gr1Problem, asm_ids: &ElementSet, gar_ids: &ElementSet) -> Result<bool, SolverError> {
    is_realizable_capped(problem, asm_ids, gar_ids, DEFAULT_STATE_CAP)
}

pub fn is_realizable_capped(
    problem: &Gr1Problem,
    asm_ids: &ElementSet,
    gar_ids: &ElementSet,
    cap: usize,
) -> Result<bool, SolverError> {
    let modules = problem.project(asm_ids, gar_ids)?;
    let game = GameStructure::new(&modules, cap)?;
    Ok(game_is_realizable(&game))
}

/// Realizability with every assumption and guarantee.
pub fn spec_is_realizable(problem: &Gr1Problem) -> Result<bool, SolverError> {
    is_realizable(problem, problem.assumption_universe(), problem.guarantee_universe())
}

/// Unrealizability over guarantee-ID sets, against a fixed set of
/// assumption IDs. Monotonic: adding guarantees never makes an
/// unrealizable specification realizable.
#[derive(Clone, Debug)]
pub struct Unrealizability<'a> {
    problem: &'a Gr1Problem,
    assumptions: ElementSet,
    cap: usize,
    deadline: Option<Instant>,
}

impl<'a> Unrealizability<'a> {
    /// Criterion against all assumptions.
    pub fn new(problem: &'a Gr1Problem) -> Self {
        Unrealizability {
            problem,
            assumptions: problem.assumption_universe().clone(),
            cap: DEFAULT_STATE_CAP,
            deadline: None,
        }
    }

    pub fn with_state_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Checks started after `deadline` fail with [`crate::Error::Timeout`].
    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn problem(&self) -> &'a Gr1Problem {
        self.problem
    }

    pub fn assumptions(&self) -> &ElementSet {
        &self.assumptions
    }

    pub fn set_assumptions(&mut self, ids: ElementSet) {
        self.assumptions = ids;
    }

    pub fn state_cap(&self) -> usize {
        self.cap
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    /// Game for the current assumptions and the given guarantees.
    pub fn game(&self, guarantees: &ElementSet) -> Result<GameStructure, SolverError> {
        let modules = self.problem.project(&self.assumptions, guarantees)?;
        Ok(GameStructure::new(&modules, self.cap)?)
    }
}

impl Criterion for Unrealizability<'_> {
    fn check(&mut self, set: &ElementSet) -> Result<bool, crate::Error> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(crate::Error::Timeout);
        }
        Ok(!game_is_realizable(&self.game(set)?))
    }
}
