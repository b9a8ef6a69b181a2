//! Recursive descent parser for `.spc` specifications.
//!
//! Parsing happens in two passes: statements are read into a raw list, then
//! names are resolved and each assertion is type- and prime-checked once all
//! declarations are known. Declaration order is therefore free.

use std::collections::HashMap;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::element::ElementId;

pub fn parse_spec(text: &str) -> Result<SpecAst, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { src: text, tokens, pos: 0 };
    let stmts = parser.statements()?;
    resolve(stmts)
}

enum Stmt {
    Var(VarDecl),
    Element(RawElement),
    Monitor { name: String, domain: Domain, line: u32, body: Vec<RawElement> },
}

struct RawElement {
    side: Side,
    kind: ElementKind,
    body: ElementBody,
    line: u32,
    text: String,
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn current(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.current() {
            Some(t) => ParseError::Syntax {
                line: t.line,
                col: t.col,
                message: format!("expected {expected}, found {}", t.tok.describe()),
            },
            None => {
                let (line, col) = self
                    .tokens
                    .last()
                    .map(|t| (t.line, t.col + (t.end - t.start) as u32))
                    .unwrap_or((1, 1));
                ParseError::Syntax { line, col, message: format!("expected {expected}, found end of input") }
            }
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().unwrap())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                Ok((s, self.bump().unwrap()))
            }
            _ => Err(self.error_here("identifier")),
        }
    }

    fn statements(&mut self) -> Result<Vec<Stmt>, ParseError> {
        let mut out = Vec::new();
        while self.current().is_some() {
            out.push(self.statement()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let start = self.current().cloned().expect("caller checked for input");
        match self.peek_ident() {
            Some("env") | Some("sys") => {
                self.bump();
                let owner = if matches!(&start.tok, Tok::Ident(s) if s == "env") { Owner::Env } else { Owner::Sys };
                let domain = self.domain()?;
                let (name, _) = self.ident()?;
                self.expect(Tok::Semi)?;
                Ok(Stmt::Var(VarDecl { name, owner, domain, line: start.line }))
            }
            Some("asm") | Some("gar") => {
                self.bump();
                let side = if matches!(&start.tok, Tok::Ident(s) if s == "asm") {
                    Side::Assumption
                } else {
                    Side::Guarantee
                };
                if self.peek_ident() == Some("respondsTo") {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let trigger = self.expr()?;
                    self.expect(Tok::Comma)?;
                    let response = self.expr()?;
                    self.expect(Tok::RParen)?;
                    let end = self.expect(Tok::Semi)?;
                    return Ok(Stmt::Element(RawElement {
                        side,
                        kind: ElementKind::AlwEv,
                        body: ElementBody::RespondsTo { trigger, response },
                        line: start.line,
                        text: self.src[start.start..end.end].trim().to_string(),
                    }));
                }
                let kind = self.kind_keyword().unwrap_or(ElementKind::Ini);
                let e = self.expr()?;
                let end = self.expect(Tok::Semi)?;
                Ok(Stmt::Element(RawElement {
                    side,
                    kind,
                    body: ElementBody::Assertion(e),
                    line: start.line,
                    text: self.src[start.start..end.end].trim().to_string(),
                }))
            }
            Some("monitor") => {
                self.bump();
                let domain = self.domain()?;
                let (name, _) = self.ident()?;
                self.expect(Tok::LBrace)?;
                let mut body = Vec::new();
                while self.peek() != Some(&Tok::RBrace) {
                    let first = match self.current() {
                        Some(t) => t.clone(),
                        None => return Err(self.error_here("`}`")),
                    };
                    let kind = match self.kind_keyword() {
                        Some(ElementKind::AlwEv) => {
                            return Err(ParseError::Syntax {
                                line: first.line,
                                col: first.col,
                                message: "monitors may only contain `ini` and `alw` assertions".into(),
                            })
                        }
                        Some(k) => k,
                        None => return Err(self.error_here("`ini` or `alw`")),
                    };
                    let e = self.expr()?;
                    let end = self.expect(Tok::Semi)?;
                    body.push(RawElement {
                        side: Side::Guarantee,
                        kind,
                        body: ElementBody::Assertion(e),
                        line: first.line,
                        text: self.src[first.start..end.end].trim().to_string(),
                    });
                }
                self.expect(Tok::RBrace)?;
                Ok(Stmt::Monitor { name, domain, line: start.line, body })
            }
            _ => Err(self.error_here("`env`, `sys`, `asm`, `gar` or `monitor`")),
        }
    }

    fn kind_keyword(&mut self) -> Option<ElementKind> {
        let k = match self.peek_ident()? {
            "ini" => ElementKind::Ini,
            "alw" => ElementKind::Alw,
            "alwEv" => ElementKind::AlwEv,
            _ => return None,
        };
        self.bump();
        Some(k)
    }

    fn domain(&mut self) -> Result<Domain, ParseError> {
        match self.peek_ident() {
            Some("boolean") => {
                self.bump();
                Ok(Domain::Boolean)
            }
            Some("Int") => {
                let at = self.bump().unwrap();
                self.expect(Tok::LParen)?;
                let lo = self.signed_int()?;
                self.expect(Tok::DotDot)?;
                let hi = self.signed_int()?;
                self.expect(Tok::RParen)?;
                if lo > hi {
                    return Err(ParseError::Syntax {
                        line: at.line,
                        col: at.col,
                        message: format!("empty integer range {lo}..{hi}"),
                    });
                }
                Ok(Domain::Int { lo, hi })
            }
            _ => Err(self.error_here("`boolean` or `Int(lo..hi)`")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.bump();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error_here("integer")),
        }
    }

    // Precedence, loosest first: <->, -> (right assoc), |, &, comparisons, +/-, unary.
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.implies()?;
        while self.peek() == Some(&Tok::DArrow) {
            self.bump();
            let rhs = self.implies()?;
            lhs = Expr::bin(BinOp::Iff, lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Expr::bin(BinOp::Implies, lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            let rhs = self.and()?;
            lhs = Expr::bin(BinOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.comparison()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            let rhs = self.comparison()?;
            lhs = Expr::bin(BinOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn comparison(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.additive()?;
        let op = match self.peek() {
            Some(Tok::Eq) => BinOp::Eq,
            Some(Tok::Ne) => BinOp::Ne,
            Some(Tok::Lt) => BinOp::Lt,
            Some(Tok::Le) => BinOp::Le,
            Some(Tok::Gt) => BinOp::Gt,
            Some(Tok::Ge) => BinOp::Ge,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.additive()?;
        Ok(Expr::bin(op, lhs, rhs))
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Expr::negate(self.unary()?))
            }
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Unary(UnaryOp::Neg, Box::new(self.unary()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(s)) => match s.as_str() {
                "true" => {
                    self.bump();
                    Ok(Expr::Bool(true))
                }
                "false" => {
                    self.bump();
                    Ok(Expr::Bool(false))
                }
                "next" => {
                    let at = self.bump().unwrap();
                    self.expect(Tok::LParen)?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen)?;
                    if inner.has_primes() {
                        return Err(ParseError::Prime {
                            line: at.line,
                            message: "nested `next` is not allowed".into(),
                        });
                    }
                    Ok(inner.primed())
                }
                _ => {
                    let (name, _) = self.ident()?;
                    Ok(Expr::Var { name, primed: false })
                }
            },
            _ => Err(self.error_here("expression")),
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(
        s,
        "env" | "sys" | "boolean" | "Int" | "asm" | "gar" | "ini" | "alw" | "alwEv" | "monitor"
            | "respondsTo" | "next" | "true" | "false"
    )
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Ty {
    Bool,
    Int,
}

struct Scope<'a> {
    vars: HashMap<&'a str, (Owner, Domain)>,
}

fn resolve(stmts: Vec<Stmt>) -> Result<SpecAst, ParseError> {
    if !stmts.iter().any(|s| !matches!(s, Stmt::Var(_))) {
        return Err(ParseError::EmptySpec);
    }

    // Monitor variables are system-side state; record them under `Sys` for
    // scoping and keep them out of the declared variable list.
    let mut seen: HashMap<String, u32> = HashMap::new();
    for s in &stmts {
        let (name, line) = match s {
            Stmt::Var(v) => (&v.name, v.line),
            Stmt::Monitor { name, line, .. } => (name, *line),
            Stmt::Element(_) => continue,
        };
        if let Some(first) = seen.insert(name.clone(), line) {
            return Err(ParseError::DuplicateVariable { name: name.clone(), line, first });
        }
    }

    let mut scope = Scope { vars: HashMap::new() };
    for s in &stmts {
        match s {
            Stmt::Var(v) => {
                scope.vars.insert(&v.name, (v.owner, v.domain));
            }
            Stmt::Monitor { name, domain, .. } => {
                scope.vars.insert(name, (Owner::Aux, *domain));
            }
            Stmt::Element(_) => {}
        }
    }

    let mut ast = SpecAst::default();
    let mut next_id = 0u32;
    let mut push = |ast: &mut SpecAst, raw: &RawElement, origin: Origin, monitor: Option<&str>| -> Result<ElementId, ParseError> {
        check_element(&scope, raw, monitor.is_some())?;
        let id = ElementId(next_id);
        next_id += 1;
        ast.elements.push(ElementDecl {
            id,
            side: raw.side,
            kind: raw.kind,
            origin,
            body: raw.body.clone(),
            monitor: monitor.map(str::to_string),
            line: raw.line,
            text: raw.text.clone(),
        });
        Ok(id)
    };

    for s in &stmts {
        match s {
            Stmt::Var(v) => ast.variables.push(v.clone()),
            Stmt::Element(raw) => {
                let origin = match raw.body {
                    ElementBody::Assertion(_) => Origin::Declared,
                    ElementBody::RespondsTo { .. } => Origin::Pattern,
                };
                push(&mut ast, raw, origin, None)?;
            }
            Stmt::Monitor { name, domain, line, body } => {
                let mut ids = Vec::with_capacity(body.len());
                for raw in body {
                    ids.push(push(&mut ast, raw, Origin::MonitorInternal, Some(name))?);
                }
                ast.monitors.push(MonitorDecl { name: name.clone(), domain: *domain, line: *line, assertions: ids });
            }
        }
    }
    Ok(ast)
}

fn check_element(scope: &Scope<'_>, raw: &RawElement, in_monitor: bool) -> Result<(), ParseError> {
    let line = raw.line;
    match &raw.body {
        ElementBody::RespondsTo { trigger, response } => {
            if raw.side == Side::Assumption {
                return Err(ParseError::Pattern {
                    line,
                    message: "`respondsTo` is only supported as a guarantee".into(),
                });
            }
            for e in [trigger, response] {
                expect_bool(scope, e, line)?;
                if e.has_primes() {
                    return Err(ParseError::Prime { line, message: "pattern arguments must not use `next`".into() });
                }
            }
            Ok(())
        }
        ElementBody::Assertion(e) => {
            expect_bool(scope, e, line)?;
            let mut err = None;
            e.for_each_var(&mut |name, primed| {
                if err.is_some() {
                    return;
                }
                let owner = scope.vars[name].0;
                let msg = match (raw.side, raw.kind) {
                    (_, ElementKind::Ini) if primed => Some("initial assertions must not use `next`".to_string()),
                    (_, ElementKind::AlwEv) if primed => Some("justice assertions must not use `next`".to_string()),
                    (Side::Assumption, ElementKind::Ini) if owner != Owner::Env => {
                        Some(format!("initial assumptions may only mention environment variables, found `{name}`"))
                    }
                    (Side::Assumption, ElementKind::Alw) if primed && owner != Owner::Env => {
                        Some(format!("safety assumptions may only use `next` on environment variables, found `{name}`"))
                    }
                    _ => None,
                };
                err = msg;
            });
            if let Some(message) = err {
                return Err(ParseError::Prime { line, message });
            }
            debug_assert!(!in_monitor || raw.side == Side::Guarantee);
            Ok(())
        }
    }
}

fn expect_bool(scope: &Scope<'_>, e: &Expr, line: u32) -> Result<(), ParseError> {
    match type_of(scope, e, line)? {
        Ty::Bool => Ok(()),
        Ty::Int => Err(ParseError::Type { line, message: "assertion must be boolean, found integer expression".into() }),
    }
}

fn type_of(scope: &Scope<'_>, e: &Expr, line: u32) -> Result<Ty, ParseError> {
    let want = |got: Ty, want: Ty, what: &str| {
        if got == want {
            Ok(())
        } else {
            Err(ParseError::Type {
                line,
                message: format!("operand of `{what}` must be {}", if want == Ty::Bool { "boolean" } else { "integer" }),
            })
        }
    };
    match e {
        Expr::Bool(_) => Ok(Ty::Bool),
        Expr::Int(_) => Ok(Ty::Int),
        Expr::Var { name, .. } => match scope.vars.get(name.as_str()) {
            Some((_, d)) if d.is_boolean() => Ok(Ty::Bool),
            Some(_) => Ok(Ty::Int),
            None => Err(ParseError::UnknownVariable { name: name.clone(), line }),
        },
        Expr::Unary(UnaryOp::Not, inner) => {
            want(type_of(scope, inner, line)?, Ty::Bool, "!")?;
            Ok(Ty::Bool)
        }
        Expr::Unary(UnaryOp::Neg, inner) => {
            want(type_of(scope, inner, line)?, Ty::Int, "-")?;
            Ok(Ty::Int)
        }
        Expr::Binary(op, l, r) => {
            let (lt, rt) = (type_of(scope, l, line)?, type_of(scope, r, line)?);
            match op {
                BinOp::And | BinOp::Or | BinOp::Implies | BinOp::Iff => {
                    want(lt, Ty::Bool, op.symbol())?;
                    want(rt, Ty::Bool, op.symbol())?;
                    Ok(Ty::Bool)
                }
                BinOp::Eq | BinOp::Ne => {
                    if lt != rt {
                        return Err(ParseError::Type {
                            line,
                            message: format!("`{}` compares a boolean with an integer", op.symbol()),
                        });
                    }
                    Ok(Ty::Bool)
                }
                BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => {
                    want(lt, Ty::Int, op.symbol())?;
                    want(rt, Ty::Int, op.symbol())?;
                    Ok(Ty::Bool)
                }
                BinOp::Add | BinOp::Sub => {
                    want(lt, Ty::Int, op.symbol())?;
                    want(rt, Ty::Int, op.symbol())?;
                    Ok(Ty::Int)
                }
            }
        }
    }
}
