//! Reduction of a parsed specification to pure GR(1), with traceability.
//!
//! Every reduced assertion remembers the element that induced it, and every
//! auxiliary variable remembers the elements that own it. [`Gr1Problem::project`]
//! uses both directions to build environment and system modules for any
//! subset of element IDs.
//!
//! Monitors contribute one auxiliary system variable plus their internal
//! assertions as guarantees, each under its own ID. A `respondsTo(p, q)`
//! pattern contributes an auxiliary `pending` bit and three guarantees under
//! the pattern's single ID:
//!
//! ```text
//! ini   pend = (p & !q)
//! alw   next(pend) = ((next(p) | pend) & !next(q))
//! alwEv !pend
//! ```
//!
//! `pend` holds exactly when some request is still waiting for its response,
//! so the justice `!pend` is satisfied infinitely often iff `G (p -> F q)`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::element::{ElementId, ElementSet};
use crate::spec::{
    BinOp, Domain, ElementBody, ElementKind, Expr, Origin, Owner, Side, SpecAst, VarDecl,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("unknown {side} id {id}")]
    UnknownId { id: ElementId, side: &'static str },
}

/// Metadata of one traceable element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementInfo {
    pub id: ElementId,
    pub side: Side,
    pub kind: ElementKind,
    pub origin: Origin,
    pub source_line: u32,
    pub text: String,
}

/// Temporal role of a reduced assertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AssertionKind {
    Initial,
    Safety,
    Justice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub owner: ElementId,
    pub side: Side,
    pub kind: AssertionKind,
    pub expr: Expr,
}

/// An assertion inside a module, tagged with the element it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub id: ElementId,
    pub expr: Expr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Module {
    pub initial: Vec<Traced>,
    pub safety: Vec<Traced>,
    pub justice: Vec<Traced>,
}

impl Module {
    fn push(&mut self, a: &Assertion) {
        let t = Traced { id: a.owner, expr: a.expr.clone() };
        match a.kind {
            AssertionKind::Initial => self.initial.push(t),
            AssertionKind::Safety => self.safety.push(t),
            AssertionKind::Justice => self.justice.push(t),
        }
    }

    pub fn len(&self) -> usize {
        self.initial.len() + self.safety.len() + self.justice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Environment and system modules over the variables they keep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameModules {
    pub variables: Vec<VarDecl>,
    pub env: Module,
    pub sys: Module,
}

/// A specification reduced to pure GR(1).
#[derive(Clone, Debug)]
pub struct Gr1Problem {
    variables: Vec<VarDecl>,
    elements: Vec<ElementInfo>,
    assertions: Vec<Assertion>,
    /// Per element: indices into `assertions`.
    induced: Vec<Vec<usize>>,
    /// Per variable: owning elements (empty for declared variables).
    var_owners: Vec<Vec<ElementId>>,
    assumption_ids: ElementSet,
    guarantee_ids: ElementSet,
}

pub fn reduce(spec: &SpecAst) -> Gr1Problem {
    let mut variables: Vec<VarDecl> = spec.variables.clone();
    let mut var_owners: Vec<Vec<ElementId>> = vec![Vec::new(); variables.len()];
    for m in &spec.monitors {
        variables.push(VarDecl { name: m.name.clone(), owner: Owner::Aux, domain: m.domain, line: m.line });
        var_owners.push(m.assertions.clone());
    }

    let mut elements = Vec::with_capacity(spec.elements.len());
    let mut assertions = Vec::new();
    let mut induced = vec![Vec::new(); spec.elements.len()];
    for e in &spec.elements {
        elements.push(ElementInfo {
            id: e.id,
            side: e.side,
            kind: e.kind,
            origin: e.origin.clone(),
            source_line: e.line,
            text: e.text.clone(),
        });
        let mut add = |kind, expr| {
            induced[e.id.index()].push(assertions.len());
            assertions.push(Assertion { owner: e.id, side: e.side, kind, expr });
        };
        match &e.body {
            ElementBody::Assertion(x) => {
                let kind = match e.kind {
                    ElementKind::Ini => AssertionKind::Initial,
                    ElementKind::Alw => AssertionKind::Safety,
                    ElementKind::AlwEv => AssertionKind::Justice,
                };
                add(kind, x.clone());
            }
            ElementBody::RespondsTo { trigger, response } => {
                let pend = format!("pending#{}", e.id.0);
                variables.push(VarDecl { name: pend.clone(), owner: Owner::Aux, domain: Domain::Boolean, line: e.line });
                var_owners.push(vec![e.id]);
                let p = trigger.clone();
                let q = response.clone();
                add(
                    AssertionKind::Initial,
                    Expr::bin(BinOp::Eq, Expr::var(&pend), Expr::bin(BinOp::And, p.clone(), Expr::negate(q.clone()))),
                );
                add(
                    AssertionKind::Safety,
                    Expr::bin(
                        BinOp::Eq,
                        Expr::next_var(&pend),
                        Expr::bin(
                            BinOp::And,
                            Expr::bin(BinOp::Or, p.primed(), Expr::var(&pend)),
                            Expr::negate(q.primed()),
                        ),
                    ),
                );
                add(AssertionKind::Justice, Expr::negate(Expr::var(&pend)));
            }
        }
    }

    let assumption_ids = elements.iter().filter(|e| e.side == Side::Assumption).map(|e| e.id).collect();
    let guarantee_ids = elements.iter().filter(|e| e.side == Side::Guarantee).map(|e| e.id).collect();
    Gr1Problem { variables, elements, assertions, induced, var_owners, assumption_ids, guarantee_ids }
}

impl Gr1Problem {
    pub fn variables(&self) -> &[VarDecl] {
        &self.variables
    }

    pub fn elements(&self) -> &[ElementInfo] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> Option<&ElementInfo> {
        self.elements.get(id.index())
    }

    pub fn assertions(&self) -> &[Assertion] {
        &self.assertions
    }

    /// Reduced assertions induced by `id`.
    pub fn assertions_of(&self, id: ElementId) -> impl Iterator<Item = &Assertion> {
        self.induced.get(id.index()).into_iter().flatten().map(|&k| &self.assertions[k])
    }

    /// Auxiliary variables owned by `id`.
    pub fn aux_vars_of(&self, id: ElementId) -> impl Iterator<Item = &VarDecl> {
        self.variables
            .iter()
            .zip(&self.var_owners)
            .filter(move |(_, owners)| owners.contains(&id))
            .map(|(v, _)| v)
    }

    /// All assumption IDs.
    pub fn assumption_universe(&self) -> &ElementSet {
        &self.assumption_ids
    }

    /// All guarantee-side IDs: declared guarantees, monitor-internal
    /// assertions, and guarantee patterns. This is the set core algorithms
    /// minimize.
    pub fn guarantee_universe(&self) -> &ElementSet {
        &self.guarantee_ids
    }

    pub fn kind_of(&self, id: ElementId) -> Option<ElementKind> {
        self.element(id).map(|e| e.kind)
    }

    /// IDs whose statements start on one of `lines`.
    pub fn ids_at_lines(&self, lines: &[u32]) -> ElementSet {
        self.elements.iter().filter(|e| lines.contains(&e.source_line)).map(|e| e.id).collect()
    }

    /// Source lines of the given IDs, in ID order.
    pub fn lines_of(&self, ids: &ElementSet) -> Vec<u32> {
        ids.iter().filter_map(|id| self.element(id)).map(|e| e.source_line).collect()
    }

    pub fn env_module(&self) -> Module {
        let mut m = Module::default();
        self.assertions.iter().filter(|a| a.side == Side::Assumption).for_each(|a| m.push(a));
        m
    }

    pub fn sys_module(&self) -> Module {
        let mut m = Module::default();
        self.assertions.iter().filter(|a| a.side == Side::Guarantee).for_each(|a| m.push(a));
        m
    }

    /// Modules containing exactly the assertions traced to the given IDs.
    ///
    /// Declared variables are always kept. An auxiliary variable is kept when
    /// one of its owning IDs is selected or when a selected assertion still
    /// mentions it; otherwise it is dropped from the state space.
    pub fn project(&self, asm_ids: &ElementSet, gar_ids: &ElementSet) -> Result<GameModules, ReduceError> {
        for id in asm_ids {
            if !self.assumption_ids.contains(id) {
                return Err(ReduceError::UnknownId { id, side: "assumption" });
            }
        }
        for id in gar_ids {
            if !self.guarantee_ids.contains(id) {
                return Err(ReduceError::UnknownId { id, side: "guarantee" });
            }
        }
        let mut env = Module::default();
        let mut sys = Module::default();
        let mut mentioned: BTreeSet<&str> = BTreeSet::new();
        for a in &self.assertions {
            let selected = match a.side {
                Side::Assumption => asm_ids.contains(a.owner),
                Side::Guarantee => gar_ids.contains(a.owner),
            };
            if !selected {
                continue;
            }
            mentioned.extend(a.expr.variables());
            match a.side {
                Side::Assumption => env.push(a),
                Side::Guarantee => sys.push(a),
            }
        }
        let variables = self
            .variables
            .iter()
            .zip(&self.var_owners)
            .filter(|(v, owners)| {
                v.owner != Owner::Aux
                    || owners.iter().any(|o| gar_ids.contains(*o))
                    || mentioned.contains(v.name.as_str())
            })
            .map(|(v, _)| v.clone())
            .collect();
        Ok(GameModules { variables, env, sys })
    }

    /// Projection onto every ID.
    pub fn full_modules(&self) -> GameModules {
        self.project(&self.assumption_ids, &self.guarantee_ids).expect("universe IDs are known")
    }
}
