use crate::spec::{BinOp, Domain, Expr, Owner, UnaryOp, VarDecl};

use super::{KernelError, StateSet};

/// Default bound on the number of states of an enumerated space.
pub const DEFAULT_STATE_CAP: usize = 1 << 22;

/// Index of a full state within a [`StateSpace`].
pub type State = usize;

/// Enumerated state space over a fixed variable order.
///
/// States are indexed mixed-radix, environment variables in the low digits,
/// so `state = env_part + env_size * sys_part`.
#[derive(Clone, Debug)]
pub struct StateSpace {
    vars: Vec<VarDecl>,
    strides: Vec<usize>,
    env_size: usize,
    sys_size: usize,
}

impl StateSpace {
    /// Environment variables come first, then system and auxiliary ones,
    /// each group in the given order.
    pub fn new(vars: &[VarDecl], cap: usize) -> Result<Self, KernelError> {
        let mut ordered: Vec<VarDecl> = vars.iter().filter(|v| v.owner == Owner::Env).cloned().collect();
        ordered.extend(vars.iter().filter(|v| v.owner != Owner::Env).cloned());
        let mut strides = Vec::with_capacity(ordered.len());
        let mut total: usize = 1;
        let (mut env_size, mut sys_size) = (1usize, 1usize);
        for v in &ordered {
            strides.push(total);
            let size = v.domain.size();
            total = total.checked_mul(size).filter(|t| *t <= cap).ok_or(KernelError::StateSpaceTooLarge { cap })?;
            if v.owner == Owner::Env {
                env_size *= size;
            } else {
                sys_size *= size;
            }
        }
        Ok(StateSpace { vars: ordered, strides, env_size, sys_size })
    }

    pub fn variables(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn size(&self) -> usize {
        self.env_size * self.sys_size
    }

    /// Number of assignments to the environment variables.
    pub fn env_size(&self) -> usize {
        self.env_size
    }

    /// Number of assignments to the system (and auxiliary) variables.
    pub fn sys_size(&self) -> usize {
        self.sys_size
    }

    pub fn compose(&self, env_part: usize, sys_part: usize) -> State {
        env_part + self.env_size * sys_part
    }

    pub fn env_part(&self, s: State) -> usize {
        s % self.env_size
    }

    pub fn sys_part(&self, s: State) -> usize {
        s / self.env_size
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn value(&self, s: State, var: usize) -> i64 {
        let d = self.vars[var].domain;
        d.value_at((s / self.strides[var]) % d.size())
    }

    /// State with the given variable values; unnamed variables take their
    /// lowest value. Booleans are written as 0/1.
    pub fn state_of(&self, assignment: &[(&str, i64)]) -> Result<State, KernelError> {
        let mut s = 0;
        for &(name, value) in assignment {
            let k = self.var_index(name).ok_or_else(|| KernelError::UnknownVariable(name.to_string()))?;
            let digit = match self.vars[k].domain {
                Domain::Boolean => value,
                Domain::Int { lo, .. } => value - lo,
            };
            if digit < 0 || digit as usize >= self.vars[k].domain.size() {
                return Err(KernelError::ValueOutOfDomain { var: name.to_string(), value });
            }
            s += digit as usize * self.strides[k];
        }
        Ok(s)
    }

    /// Set of states satisfying `pred`.
    pub fn states_where(&self, mut pred: impl FnMut(State) -> bool) -> StateSet {
        StateSet::from_fn(self.size(), &mut pred)
    }

    /// Existential projection onto the environment digits: the set of
    /// environment assignments that extend to some state of `set`.
    pub fn exists_sys(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.env_size);
        for s in set.iter() {
            out.insert(self.env_part(s));
        }
        out
    }

    pub fn compile(&self, e: &Expr) -> Result<Compiled, KernelError> {
        Ok(match e {
            Expr::Bool(b) => Compiled::Const(i64::from(*b)),
            Expr::Int(v) => Compiled::Const(*v),
            Expr::Var { name, primed } => {
                let k = self.var_index(name).ok_or_else(|| KernelError::UnknownVariable(name.clone()))?;
                if *primed {
                    Compiled::Next(k)
                } else {
                    Compiled::Cur(k)
                }
            }
            Expr::Unary(op, inner) => Compiled::Unary(*op, Box::new(self.compile(inner)?)),
            Expr::Binary(op, l, r) => Compiled::Binary(*op, Box::new(self.compile(l)?), Box::new(self.compile(r)?)),
        })
    }

    /// Evaluates `e` on `state`, reading primed variables from `successor`.
    pub fn eval(&self, e: &Expr, state: State, successor: Option<State>) -> Result<bool, KernelError> {
        let c = self.compile(e)?;
        if c.has_next() && successor.is_none() {
            return Err(KernelError::MissingSuccessor);
        }
        Ok(c.holds(self, state, successor.unwrap_or(state)))
    }
}

/// An expression with variable names resolved to positions in a space.
#[derive(Clone, Debug)]
pub enum Compiled {
    Const(i64),
    Cur(usize),
    Next(usize),
    Unary(UnaryOp, Box<Compiled>),
    Binary(BinOp, Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub fn has_next(&self) -> bool {
        match self {
            Compiled::Next(_) => true,
            Compiled::Unary(_, e) => e.has_next(),
            Compiled::Binary(_, l, r) => l.has_next() || r.has_next(),
            _ => false,
        }
    }

    pub fn holds(&self, space: &StateSpace, cur: State, next: State) -> bool {
        self.value(space, cur, next) != 0
    }

    // Booleans are 0/1 integers.
    fn value(&self, space: &StateSpace, cur: State, next: State) -> i64 {
        match self {
            Compiled::Const(v) => *v,
            Compiled::Cur(k) => space.value(cur, *k),
            Compiled::Next(k) => space.value(next, *k),
            Compiled::Unary(UnaryOp::Not, e) => i64::from(e.value(space, cur, next) == 0),
            Compiled::Unary(UnaryOp::Neg, e) => -e.value(space, cur, next),
            Compiled::Binary(op, l, r) => {
                let a = l.value(space, cur, next);
                // Short-circuit the boolean connectives.
                match op {
                    BinOp::And if a == 0 => return 0,
                    BinOp::Or if a != 0 => return 1,
                    BinOp::Implies if a == 0 => return 1,
                    _ => {}
                }
                let b = r.value(space, cur, next);
                match op {
                    BinOp::And | BinOp::Or | BinOp::Implies => i64::from(b != 0),
                    BinOp::Iff => i64::from((a != 0) == (b != 0)),
                    BinOp::Eq => i64::from(a == b),
                    BinOp::Ne => i64::from(a != b),
                    BinOp::Lt => i64::from(a < b),
                    BinOp::Le => i64::from(a <= b),
                    BinOp::Gt => i64::from(a > b),
                    BinOp::Ge => i64::from(a >= b),
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                }
            }
        }
    }
}
