use fixedbitset::FixedBitSet;

use crate::element::ElementId;
use crate::reduce::{GameModules, Traced};

use super::space::{Compiled, State, StateSpace};
use super::{KernelError, StateSet};

/// Largest `|space|^2` for which both transition relations are tabulated.
const MATERIALIZE_LIMIT: usize = 1 << 24;

/// Two-player game over an enumerated state space.
///
/// `env_initial` ranges over environment assignments only; every other set
/// ranges over full states.
#[derive(Clone, Debug)]
pub struct GameStructure {
    space: StateSpace,
    env_initial: StateSet,
    /// Each initial guarantee separately, so that the initial condition can
    /// be rebuilt for any subset without re-enumerating.
    sys_initial: Vec<(ElementId, StateSet)>,
    env_safety: Vec<Compiled>,
    sys_safety: Vec<Compiled>,
    env_justice: Vec<StateSet>,
    sys_justice: Vec<StateSet>,
    table: Option<MoveTable>,
}

#[derive(Clone, Debug)]
struct MoveTable {
    /// Per state: admissible environment successor assignments.
    env: Vec<FixedBitSet>,
    /// Per state: admissible full successor states.
    sys: Vec<StateSet>,
}

impl GameStructure {
    pub fn new(modules: &GameModules, cap: usize) -> Result<Self, KernelError> {
        let space = StateSpace::new(&modules.variables, cap)?;
        let n = space.size();

        let state_pred = |ts: &[Traced]| -> Result<Vec<(ElementId, StateSet)>, KernelError> {
            ts.iter()
                .map(|t| {
                    let c = space.compile(&t.expr)?;
                    Ok((t.id, space.states_where(|s| c.holds(&space, s, s))))
                })
                .collect()
        };

        let env_initial = {
            let mut set = StateSet::full(space.env_size());
            for (_, states) in state_pred(&modules.env.initial)? {
                // Initial assumptions only read environment variables, so the
                // states with system part zero are representative.
                let restricted = StateSet::from_fn(space.env_size(), |x| states.contains(space.compose(x, 0)));
                set = set.intersection(&restricted);
            }
            set
        };
        let sys_initial = state_pred(&modules.sys.initial)?;
        let env_justice = state_pred(&modules.env.justice)?.into_iter().map(|(_, s)| s).collect();
        let sys_justice = state_pred(&modules.sys.justice)?.into_iter().map(|(_, s)| s).collect();
        let compile_all =
            |ts: &[Traced]| ts.iter().map(|t| space.compile(&t.expr)).collect::<Result<Vec<_>, _>>();
        let env_safety = compile_all(&modules.env.safety)?;
        let sys_safety = compile_all(&modules.sys.safety)?;

        let mut game =
            GameStructure { space, env_initial, sys_initial, env_safety, sys_safety, env_justice, sys_justice, table: None };
        if n.checked_mul(n).is_some_and(|sq| sq <= MATERIALIZE_LIMIT) {
            game.table = Some(game.tabulate());
        }
        Ok(game)
    }

    fn tabulate(&self) -> MoveTable {
        let n = self.space.size();
        let nx = self.space.env_size();
        let env = (0..n)
            .map(|s| {
                let mut row = FixedBitSet::with_capacity(nx);
                for x in 0..nx {
                    if self.env_allows_eval(s, x) {
                        row.insert(x);
                    }
                }
                row
            })
            .collect();
        let sys = (0..n).map(|s| StateSet::from_fn(n, |t| self.sys_allows_eval(s, t))).collect();
        MoveTable { env, sys }
    }

    fn env_allows_eval(&self, s: State, x: usize) -> bool {
        // Safety assumptions only prime environment variables.
        let t = self.space.compose(x, 0);
        self.env_safety.iter().all(|c| c.holds(&self.space, s, t))
    }

    fn sys_allows_eval(&self, s: State, t: State) -> bool {
        self.sys_safety.iter().all(|c| c.holds(&self.space, s, t))
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    /// Whether the relation tables were built.
    pub fn is_materialized(&self) -> bool {
        self.table.is_some()
    }

    /// `rho_e(s, x')`.
    pub fn env_allows(&self, s: State, env_next: usize) -> bool {
        match &self.table {
            Some(t) => t.env[s].contains(env_next),
            None => self.env_allows_eval(s, env_next),
        }
    }

    /// `rho_s(s, t)`.
    pub fn sys_allows(&self, s: State, t: State) -> bool {
        match &self.table {
            Some(tb) => tb.sys[s].contains(t),
            None => self.sys_allows_eval(s, t),
        }
    }

    /// Conjunction of the initial assumptions, over environment assignments.
    pub fn env_initial(&self) -> &StateSet {
        &self.env_initial
    }

    /// Conjunction of all initial guarantees.
    pub fn sys_initial(&self) -> StateSet {
        self.sys_initial_where(|_| true)
    }

    /// Conjunction of the initial guarantees whose element satisfies `keep`.
    pub fn sys_initial_where(&self, mut keep: impl FnMut(ElementId) -> bool) -> StateSet {
        let mut set = StateSet::full(self.space.size());
        for (id, s) in &self.sys_initial {
            if keep(*id) {
                set = set.intersection(s);
            }
        }
        set
    }

    pub fn env_justice(&self) -> &[StateSet] {
        &self.env_justice
    }

    pub fn sys_justice(&self) -> &[StateSet] {
        &self.sys_justice
    }

    /// Same game without the tabulated relations; every query evaluates the
    /// assertions directly.
    pub fn dematerialized(&self) -> GameStructure {
        GameStructure { table: None, ..self.clone() }
    }

    /// Game with all justice assumptions removed.
    pub fn without_env_justice(&self) -> GameStructure {
        GameStructure { env_justice: Vec::new(), ..self.clone() }
    }

    /// Controllable predecessor: states from which, for every admissible
    /// environment move, the system has an admissible response inside
    /// `target`. A state without admissible environment moves is included.
    pub fn cpre(&self, target: &StateSet) -> StateSet {
        let n = self.space.size();
        let nx = self.space.env_size();
        let ny = self.space.sys_size();
        let mut out = StateSet::empty(n);
        let mut answered = FixedBitSet::with_capacity(nx);
        for s in 0..n {
            answered.clear();
            match &self.table {
                Some(tb) => {
                    let good = tb.sys[s].intersection(target);
                    for t in good.iter() {
                        answered.insert(self.space.env_part(t));
                    }
                    if tb.env[s].is_subset(&answered) {
                        out.insert(s);
                    }
                }
                None => {
                    let ok = (0..nx).all(|x| {
                        !self.env_allows_eval(s, x)
                            || (0..ny).any(|y| {
                                let t = self.space.compose(x, y);
                                target.contains(t) && self.sys_allows_eval(s, t)
                            })
                    });
                    if ok {
                        out.insert(s);
                    }
                }
            }
        }
        out
    }
}
