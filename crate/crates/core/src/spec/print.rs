//! Pretty-printing back to the concrete syntax.
//!
//! The output re-parses to a structurally identical [`SpecAst`]: element IDs
//! come out in the same order because elements are printed in ID order, with
//! each monitor block emitted where its first internal assertion sits.

use std::fmt::{self, Write as _};

use super::ast::*;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Binary(op, ..) => match op {
            BinOp::Iff => 1,
            BinOp::Implies => 2,
            BinOp::Or => 3,
            BinOp::And => 4,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 5,
            BinOp::Add | BinOp::Sub => 6,
        },
        Expr::Unary(..) => 7,
        _ => 8,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Bool(b) => write!(f, "{b}"),
            Expr::Int(v) if *v < 0 => write!(f, "({v})"),
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var { name, primed: false } => f.write_str(name),
            Expr::Var { name, primed: true } => write!(f, "next({name})"),
            Expr::Unary(op, inner) => {
                f.write_str(match op {
                    UnaryOp::Not => "!",
                    UnaryOp::Neg => "-",
                })?;
                write_child(f, inner, 7)
            }
            Expr::Binary(op, l, r) => {
                let p = precedence(self);
                // `->` is right associative, everything else left associative;
                // comparisons do not chain.
                let (lmin, rmin) = match op {
                    BinOp::Implies => (p + 1, p),
                    BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => (p + 1, p + 1),
                    _ => (p, p + 1),
                };
                write_child(f, l, lmin)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, rmin)
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Boolean => f.write_str("boolean"),
            Domain::Int { lo, hi } => write!(f, "Int({lo}..{hi})"),
        }
    }
}

fn element_line(e: &ElementDecl) -> String {
    let side = match e.side {
        Side::Assumption => "asm",
        Side::Guarantee => "gar",
    };
    match &e.body {
        ElementBody::Assertion(x) => format!("{side} {} {x};", e.kind.keyword()),
        ElementBody::RespondsTo { trigger, response } => format!("{side} respondsTo({trigger}, {response});"),
    }
}

impl fmt::Display for SpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for v in &self.variables {
            let owner = match v.owner {
                Owner::Env => "env",
                Owner::Sys | Owner::Aux => "sys",
            };
            writeln!(out, "{owner} {} {};", v.domain, v.name)?;
        }
        let mut printed = vec![false; self.monitors.len()];
        for e in &self.elements {
            match &e.monitor {
                None => writeln!(out, "{}", element_line(e))?,
                Some(name) => {
                    let k = self.monitors.iter().position(|m| &m.name == name).expect("monitor of element");
                    if printed[k] {
                        continue;
                    }
                    // Empty monitors declared earlier go first to keep the
                    // monitor order.
                    for (done, m) in printed.iter_mut().zip(&self.monitors).take(k) {
                        if !*done {
                            *done = true;
                            writeln!(out, "monitor {} {} {{\n}}", m.domain, m.name)?;
                        }
                    }
                    printed[k] = true;
                    let m = &self.monitors[k];
                    writeln!(out, "monitor {} {} {{", m.domain, m.name)?;
                    for id in &m.assertions {
                        let inner = &self.elements[id.index()];
                        if let ElementBody::Assertion(x) = &inner.body {
                            writeln!(out, "  {} {x};", inner.kind.keyword())?;
                        }
                    }
                    writeln!(out, "}}")?;
                }
            }
        }
        // Trailing monitors without assertions still declare a variable.
        for (k, m) in self.monitors.iter().enumerate() {
            if !printed[k] {
                writeln!(out, "monitor {} {} {{\n}}", m.domain, m.name)?;
            }
        }
        f.write_str(&out)
    }
}
