//! Oracles and generators shared by the integration tests.
//!
//! The winning-region oracle solves the game through an unrelated route: the
//! GR(1) objective is turned into a parity game on an explicit turn-based
//! graph (with justice counters in the node), which is then solved with
//! Zielonka's recursive algorithm.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unrealcore::kernel::{StateSet, StateSpace, DEFAULT_STATE_CAP};
use unrealcore::minimize::FnCriterion;
use unrealcore::reduce::{reduce, GameModules, Gr1Problem, Traced};
use unrealcore::spec::parse_spec;
use unrealcore::{ElementId, ElementSet};

pub const LIFT: &str = include_str!("../../../../fixtures/lift.spc");
pub const MONITOR: &str = include_str!("../../../../fixtures/monitor.spc");

pub fn problem(text: &str) -> Gr1Problem {
    reduce(&parse_spec(text).expect("fixture parses"))
}

pub fn set(v: &[u32]) -> ElementSet {
    ElementSet::from_ids(v.iter().copied())
}

/// The six lift cores, as source lines.
pub const LIFT_CORES: [&[u32]; 6] = [&[21, 27, 36], &[21, 27, 37], &[27, 35, 36], &[27, 35, 37], &[27, 36, 37], &[24, 27, 30, 37]];

pub fn lift_cores(p: &Gr1Problem) -> BTreeSet<ElementSet> {
    LIFT_CORES.iter().map(|l| p.ids_at_lines(l)).collect()
}

// ---------------------------------------------------------------------------
// Parity-game oracle

struct ParityGame {
    /// 0: system (even), 1: environment (odd).
    owner: Vec<u8>,
    prio: Vec<u32>,
    succ: Vec<Vec<usize>>,
}

impl ParityGame {
    fn attractor(&self, mask: &[bool], target: &[bool], player: u8) -> Vec<bool> {
        let mut attr: Vec<bool> = target.iter().zip(mask).map(|(t, m)| *t && *m).collect();
        loop {
            let mut changed = false;
            for v in 0..self.owner.len() {
                if !mask[v] || attr[v] {
                    continue;
                }
                let mut inside = self.succ[v].iter().filter(|&&w| mask[w]);
                let pulled = if self.owner[v] == player {
                    inside.any(|&w| attr[w])
                } else {
                    inside.all(|&w| attr[w])
                };
                if pulled {
                    attr[v] = true;
                    changed = true;
                }
            }
            if !changed {
                return attr;
            }
        }
    }

    /// Winning sets of (even, odd) within the subgame `mask`.
    fn zielonka(&self, mask: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let n = mask.len();
        let Some(p) = (0..n).filter(|&v| mask[v]).map(|v| self.prio[v]).max() else {
            return (vec![false; n], vec![false; n]);
        };
        let i = (p % 2) as u8;
        let top: Vec<bool> = (0..n).map(|v| mask[v] && self.prio[v] == p).collect();
        let a = self.attractor(mask, &top, i);
        let rest: Vec<bool> = (0..n).map(|v| mask[v] && !a[v]).collect();
        let (w0, w1) = self.zielonka(&rest);
        let opp_won = if i == 0 { &w1 } else { &w0 };
        if !opp_won.iter().any(|&b| b) {
            let all = mask.to_vec();
            return if i == 0 { (all, vec![false; n]) } else { (vec![false; n], all) };
        }
        let b = self.attractor(mask, opp_won, 1 - i);
        let rest: Vec<bool> = (0..n).map(|v| mask[v] && !b[v]).collect();
        let (mut w0, mut w1) = self.zielonka(&rest);
        let opp = if i == 0 { &mut w1 } else { &mut w0 };
        for v in 0..n {
            if b[v] {
                opp[v] = true;
            }
        }
        (w0, w1)
    }
}

fn holds_all(space: &StateSpace, ts: &[Traced], s: usize, t: usize) -> bool {
    ts.iter().all(|a| space.eval(&a.expr, s, Some(t)).expect("evaluable"))
}

fn state_sets(space: &StateSpace, ts: &[Traced]) -> Vec<Vec<bool>> {
    let sets: Vec<Vec<bool>> =
        ts.iter().map(|a| (0..space.size()).map(|s| space.eval(&a.expr, s, None).expect("evaluable")).collect()).collect();
    if sets.is_empty() {
        vec![vec![true; space.size()]]
    } else {
        sets
    }
}

/// Winning region of the game built from `modules`, via the parity oracle.
// Counter indices are node coordinates as well as list indices.
#[allow(clippy::needless_range_loop)]
pub fn oracle_winning_region(modules: &GameModules) -> StateSet {
    let space = StateSpace::new(&modules.variables, DEFAULT_STATE_CAP).expect("small space");
    let (n, nx, ny) = (space.size(), space.env_size(), space.sys_size());
    let je = state_sets(&space, &modules.env.justice);
    let js = state_sets(&space, &modules.sys.justice);
    let (me, ms) = (je.len(), js.len());

    // Node layout: env nodes (s, i, j), then intermediate nodes (s, i, j, x'),
    // then a system-win sink and an environment-win sink.
    let env_node = |s: usize, i: usize, j: usize| (s * me + i) * ms + j;
    let n_env = n * me * ms;
    let mid_node = |e: usize, x: usize| n_env + e * nx + x;
    let sys_sink = n_env + n_env * nx;
    let env_sink = sys_sink + 1;
    let total = env_sink + 1;
    let mut g = ParityGame { owner: vec![0; total], prio: vec![0; total], succ: vec![Vec::new(); total] };
    g.succ[sys_sink] = vec![sys_sink];
    g.succ[env_sink] = vec![env_sink];
    g.prio[env_sink] = 1;
    g.owner[env_sink] = 1;

    for s in 0..n {
        for i in 0..me {
            for j in 0..ms {
                let e = env_node(s, i, j);
                g.owner[e] = 1;
                let b = js[j][s] && j == ms - 1;
                let ev = je[i][s] && i == me - 1;
                g.prio[e] = if b { 2 } else if ev { 1 } else { 0 };
                let i2 = if je[i][s] { (i + 1) % me } else { i };
                let j2 = if js[j][s] { (j + 1) % ms } else { j };
                for x in 0..nx {
                    if !holds_all(&space, &modules.env.safety, s, space.compose(x, 0)) {
                        continue;
                    }
                    let m = mid_node(e, x);
                    g.succ[e].push(m);
                    for y in 0..ny {
                        let t = space.compose(x, y);
                        if holds_all(&space, &modules.sys.safety, s, t) {
                            g.succ[m].push(env_node(t, i2, j2));
                        }
                    }
                    if g.succ[m].is_empty() {
                        g.succ[m].push(env_sink);
                    }
                }
                if g.succ[e].is_empty() {
                    g.succ[e].push(sys_sink);
                }
            }
        }
    }
    for e in 0..n_env {
        for x in 0..nx {
            let m = mid_node(e, x);
            if g.succ[m].is_empty() {
                // Unreachable intermediate node; park it.
                g.succ[m].push(sys_sink);
            }
        }
    }
    let (w0, _) = g.zielonka(&vec![true; total]);
    StateSet::from_fn(n, |s| w0[env_node(s, 0, 0)])
}

/// Realizability via the parity oracle: every initial environment choice
/// has a winning initial state.
pub fn oracle_realizable(modules: &GameModules) -> bool {
    let space = StateSpace::new(&modules.variables, DEFAULT_STATE_CAP).expect("small space");
    let w = oracle_winning_region(modules);
    (0..space.env_size()).all(|x| {
        let s0 = space.compose(x, 0);
        let env_ok = modules.env.initial.iter().all(|a| space.eval(&a.expr, s0, None).unwrap());
        !env_ok
            || (0..space.sys_size()).any(|y| {
                let s = space.compose(x, y);
                w.contains(s) && modules.sys.initial.iter().all(|a| space.eval(&a.expr, s, None).unwrap())
            })
    })
}

// ---------------------------------------------------------------------------
// Random specifications

fn literal(rng: &mut ChaCha8Rng, vars: &[String], primed: bool) -> String {
    let v = &vars[rng.random_range(0..vars.len())];
    let neg = if rng.random_bool(0.5) { "!" } else { "" };
    if primed {
        format!("{neg}next({v})")
    } else {
        format!("{neg}{v}")
    }
}

fn clause(rng: &mut ChaCha8Rng, cur: &[String], next: &[String]) -> String {
    let k = rng.random_range(1..=2);
    let mut lits = Vec::new();
    for _ in 0..k {
        if !next.is_empty() && rng.random_bool(0.5) {
            lits.push(literal(rng, next, true));
        } else {
            lits.push(literal(rng, cur, false));
        }
    }
    let op = if rng.random_bool(0.7) { " | " } else { " & " };
    lits.join(op)
}

/// Random specification text: at most 6 boolean variables and at most 8
/// guarantees.
pub fn random_spec(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nx = rng.random_range(1..=3);
    let ny = rng.random_range(1..=3);
    let env: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
    let sys: Vec<String> = (0..ny).map(|i| format!("y{i}")).collect();
    let all: Vec<String> = env.iter().chain(&sys).cloned().collect();
    let mut out = String::new();
    for v in &env {
        out += &format!("env boolean {v};\n");
    }
    for v in &sys {
        out += &format!("sys boolean {v};\n");
    }
    for _ in 0..rng.random_range(0..=3) {
        let line = match rng.random_range(0..3) {
            0 => format!("asm ini {};\n", clause(&mut rng, &env, &[])),
            1 => format!("asm alw {};\n", clause(&mut rng, &all, &env)),
            _ => format!("asm alwEv {};\n", clause(&mut rng, &all, &[])),
        };
        out += &line;
    }
    for _ in 0..rng.random_range(1..=8) {
        let line = match rng.random_range(0..4) {
            0 => format!("gar ini {};\n", clause(&mut rng, &all, &[])),
            1 | 2 => format!("gar alw {};\n", clause(&mut rng, &all, &all)),
            _ => format!("gar alwEv {};\n", clause(&mut rng, &all, &[])),
        };
        out += &line;
    }
    out
}

// ---------------------------------------------------------------------------
// Random monotonic criteria

/// A monotonic criterion given by its generating family: `S` satisfies it
/// iff `S` contains one of the family's sets.
#[derive(Clone, Debug)]
pub struct Family {
    pub universe: ElementSet,
    pub sets: Vec<ElementSet>,
}

impl Family {
    pub fn random(seed: u64) -> Family {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=10u32);
        let universe: ElementSet = (0..n).map(ElementId).collect();
        let k = rng.random_range(1..=4);
        let sets = (0..k)
            .map(|_| {
                let size = rng.random_range(1..=n.min(4));
                let mut s = ElementSet::new();
                while s.len() < size as usize {
                    s.insert(ElementId(rng.random_range(0..n)));
                }
                s
            })
            .collect();
        Family { universe, sets }
    }

    pub fn holds(&self, s: &ElementSet) -> bool {
        self.sets.iter().any(|f| f.is_subset(s))
    }

    pub fn criterion(&self) -> FnCriterion<impl FnMut(&ElementSet) -> bool + '_> {
        FnCriterion(move |s: &ElementSet| self.holds(s))
    }

    /// Minimal members of the family: exactly the cores.
    pub fn cores(&self) -> BTreeSet<ElementSet> {
        self.sets.iter().filter(|f| !self.sets.iter().any(|g| g != *f && g.is_subset(f))).cloned().collect()
    }
}

// ---------------------------------------------------------------------------
// Lasso traces

/// All words `prefix · loop^ω` over `alphabet` letters with the given
/// lengths.
pub fn lassos(alphabet: usize, prefix: usize, period: usize) -> impl Iterator<Item = Vec<usize>> {
    let len = prefix + period;
    (0..alphabet.pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let d = code % alphabet;
                code /= alphabet;
                d
            })
            .collect()
    })
}

/// `G (p -> F q)` on a lasso given per-position truth values.
pub fn response_holds(p: &[bool], q: &[bool], prefix: usize) -> bool {
    let len = p.len();
    let q_in_loop = q[prefix..].iter().any(|&b| b);
    (0..len).all(|i| !p[i] || q[i..].iter().any(|&b| b) || q_in_loop)
}

