//! Syntax tree of a parsed specification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::element::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Env,
    Sys,
    /// Auxiliary variables only come out of the reduction.
    Aux,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Boolean,
    /// Inclusive integer range.
    Int { lo: i64, hi: i64 },
}

impl Domain {
    pub fn size(self) -> usize {
        match self {
            Domain::Boolean => 2,
            Domain::Int { lo, hi } => (hi - lo + 1) as usize,
        }
    }

    pub fn is_boolean(self) -> bool {
        matches!(self, Domain::Boolean)
    }

    /// Value encoded by digit `k` of the mixed-radix state index.
    pub fn value_at(self, k: usize) -> i64 {
        match self {
            Domain::Boolean => k as i64,
            Domain::Int { lo, .. } => lo + k as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub owner: Owner,
    pub domain: Domain,
    pub line: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
            BinOp::Eq => "=",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
        }
    }
}

/// Expression over current and next-state variables.
///
/// `next(e)` is desugared at parse time by priming every variable inside
/// `e`, so the tree only ever records primes on variable leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Bool(bool),
    Int(i64),
    Var { name: String, primed: bool },
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var { name: name.to_string(), primed: false }
    }

    pub fn next_var(name: &str) -> Expr {
        Expr::Var { name: name.to_string(), primed: true }
    }

    pub fn negate(e: Expr) -> Expr {
        Expr::Unary(UnaryOp::Not, Box::new(e))
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    /// Copy of `self` with every variable primed.
    pub fn primed(&self) -> Expr {
        match self {
            Expr::Var { name, .. } => Expr::Var { name: name.clone(), primed: true },
            Expr::Unary(op, e) => Expr::Unary(*op, Box::new(e.primed())),
            Expr::Binary(op, l, r) => Expr::Binary(*op, Box::new(l.primed()), Box::new(r.primed())),
            other => other.clone(),
        }
    }

    pub fn has_primes(&self) -> bool {
        match self {
            Expr::Var { primed, .. } => *primed,
            Expr::Unary(_, e) => e.has_primes(),
            Expr::Binary(_, l, r) => l.has_primes() || r.has_primes(),
            _ => false,
        }
    }

    /// Names of all variables mentioned, primed or not.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Var { name, .. } => {
                out.insert(name.as_str());
            }
            Expr::Unary(_, e) => e.collect_vars(out),
            Expr::Binary(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            _ => {}
        }
    }

    /// Visits every variable leaf with its prime flag.
    pub fn for_each_var(&self, f: &mut impl FnMut(&str, bool)) {
        match self {
            Expr::Var { name, primed } => f(name, *primed),
            Expr::Unary(_, e) => e.for_each_var(f),
            Expr::Binary(_, l, r) => {
                l.for_each_var(f);
                r.for_each_var(f);
            }
            _ => {}
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Assumption,
    Guarantee,
}

/// Temporal kind of an element: initial, safety (`alw`), or justice (`alwEv`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    #[serde(rename = "ini")]
    Ini,
    #[serde(rename = "alw")]
    Alw,
    #[serde(rename = "alwEv")]
    AlwEv,
}

impl ElementKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ElementKind::Ini => "ini",
            ElementKind::Alw => "alw",
            ElementKind::AlwEv => "alwEv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Declared,
    MonitorInternal,
    Pattern,
}

impl Origin {
    pub fn label(&self) -> &'static str {
        match self {
            Origin::Declared => "declared",
            Origin::MonitorInternal => "monitor-internal",
            Origin::Pattern => "pattern",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementBody {
    Assertion(Expr),
    /// `G (trigger -> F response)`.
    RespondsTo { trigger: Expr, response: Expr },
}

/// One traceable element: a declared assertion, one assertion inside a
/// monitor, or a whole pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementDecl {
    pub id: ElementId,
    pub side: Side,
    /// Patterns are classified as justices: their removable payload
    /// includes one.
    pub kind: ElementKind,
    pub origin: Origin,
    pub body: ElementBody,
    /// Name of the enclosing monitor for monitor-internal assertions.
    pub monitor: Option<String>,
    pub line: u32,
    /// Source text of the statement, trimmed.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonitorDecl {
    pub name: String,
    pub domain: Domain,
    pub line: u32,
    pub assertions: Vec<ElementId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecAst {
    /// Declared `env`/`sys` variables, in declaration order.
    pub variables: Vec<VarDecl>,
    pub monitors: Vec<MonitorDecl>,
    /// Indexed by `ElementId`.
    pub elements: Vec<ElementDecl>,
}

impl SpecAst {
    pub fn element(&self, id: ElementId) -> Option<&ElementDecl> {
        self.elements.get(id.index())
    }

    pub fn variable(&self, name: &str) -> Option<&VarDecl> {
        self.variables.iter().find(|v| v.name == name)
    }

    pub fn monitor(&self, name: &str) -> Option<&MonitorDecl> {
        self.monitors.iter().find(|m| m.name == name)
    }

    pub fn assumptions(&self) -> impl Iterator<Item = &ElementDecl> {
        self.elements.iter().filter(|e| e.side == Side::Assumption)
    }

    pub fn guarantees(&self) -> impl Iterator<Item = &ElementDecl> {
        self.elements.iter().filter(|e| e.side == Side::Guarantee)
    }

    /// Equality that ignores source lines and statement text.
    pub fn same_structure(&self, other: &SpecAst) -> bool {
        let vars = |s: &SpecAst| {
            s.variables.iter().map(|v| (v.name.clone(), v.owner, v.domain)).collect::<Vec<_>>()
        };
        let mons = |s: &SpecAst| {
            s.monitors
                .iter()
                .map(|m| (m.name.clone(), m.domain, m.assertions.clone()))
                .collect::<Vec<_>>()
        };
        let elems = |s: &SpecAst| {
            s.elements
                .iter()
                .map(|e| (e.id, e.side, e.kind, e.origin.clone(), e.body.clone(), e.monitor.clone()))
                .collect::<Vec<_>>()
        };
        vars(self) == vars(other) && mons(self) == mons(other) && elems(self) == elems(other)
    }
}
