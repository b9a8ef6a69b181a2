//! The `.spc` specification language: syntax tree, parser, printer.
//!
//! ```text
//! env boolean b;                 // environment variable
//! sys Int(1..3) f;               // system variable with an integer range
//! asm ini !b;                    // initial assumption
//! gar alw b -> next(f) = 1;      // safety guarantee
//! gar alwEv f = 3;               // justice guarantee
//! monitor boolean seen {         // auxiliary state with its own assertions
//!   ini !seen;
//!   alw next(seen) = (seen | b);
//! }
//! gar respondsTo(b, f = 1);      // G (b -> F f = 1)
//! ```
//!
//! An assertion without `ini`/`alw`/`alwEv` is initial.

mod ast;
mod lexer;
mod parser;
mod print;

use thiserror::Error;

pub use ast::*;
pub use parser::parse_spec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("line {line}: type error: {message}")]
    Type { line: u32, message: String },
    #[error("line {line}: misplaced `next`: {message}")]
    Prime { line: u32, message: String },
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { name: String, line: u32 },
    #[error("line {line}: variable `{name}` already declared on line {first}")]
    DuplicateVariable { name: String, line: u32, first: u32 },
    #[error("line {line}: {message}")]
    Pattern { line: u32, message: String },
    #[error("specification declares no assumptions, guarantees or monitors")]
    EmptySpec,
}

impl ParseError {
    pub fn line(&self) -> Option<u32> {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Type { line, .. }
            | ParseError::Prime { line, .. }
            | ParseError::UnknownVariable { line, .. }
            | ParseError::DuplicateVariable { line, .. }
            | ParseError::Pattern { line, .. } => Some(*line),
            ParseError::EmptySpec => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ElementId;

    #[test]
    fn single_guarantee() {
        let ast = parse_spec("sys boolean y; gar ini y;").unwrap();
        assert_eq!(ast.variables.len(), 1);
        assert_eq!(ast.variables[0].owner, Owner::Sys);
        assert_eq!(ast.elements.len(), 1);
        assert_eq!(ast.elements[0].kind, ElementKind::Ini);
        assert_eq!(ast.elements[0].side, Side::Guarantee);
    }

    #[test]
    fn missing_kind_defaults_to_initial() {
        let ast = parse_spec("env boolean x; asm !x;").unwrap();
        assert_eq!(ast.elements[0].kind, ElementKind::Ini);
    }

    #[test]
    fn next_of_expression_primes_every_variable() {
        let ast = parse_spec("env boolean a; env boolean b; asm alw next(!a & b);").unwrap();
        let ElementBody::Assertion(e) = &ast.elements[0].body else { panic!() };
        assert_eq!(
            *e,
            Expr::bin(BinOp::And, Expr::negate(Expr::next_var("a")), Expr::next_var("b"))
        );
    }

    #[test]
    fn precedence_of_implication_and_comparison() {
        let ast = parse_spec("env boolean b1; sys Int(1..3) f; asm alw b1 & f=1 -> next(!b1);").unwrap();
        let ElementBody::Assertion(e) = &ast.elements[0].body else { panic!() };
        let expected = Expr::bin(
            BinOp::Implies,
            Expr::bin(BinOp::And, Expr::var("b1"), Expr::bin(BinOp::Eq, Expr::var("f"), Expr::Int(1))),
            Expr::negate(Expr::next_var("b1")),
        );
        assert_eq!(*e, expected);
    }

    #[test]
    fn implication_is_right_associative() {
        let ast = parse_spec("sys boolean a; sys boolean b; sys boolean c; gar a -> b -> c;").unwrap();
        let ElementBody::Assertion(e) = &ast.elements[0].body else { panic!() };
        let expected = Expr::bin(
            BinOp::Implies,
            Expr::var("a"),
            Expr::bin(BinOp::Implies, Expr::var("b"), Expr::var("c")),
        );
        assert_eq!(*e, expected);
    }

    #[test]
    fn monitor_assertions_get_their_own_ids() {
        let src = "env boolean x;\nsys boolean y;\nmonitor boolean a {\n  ini !a;\n  alw next(a) = (a | next(x));\n}\ngar alw a | y;\n";
        let ast = parse_spec(src).unwrap();
        assert_eq!(ast.monitors.len(), 1);
        assert_eq!(ast.monitors[0].assertions, vec![ElementId(0), ElementId(1)]);
        assert_eq!(ast.elements[0].line, 4);
        assert_eq!(ast.elements[1].line, 5);
        assert_eq!(ast.elements[0].origin, Origin::MonitorInternal);
        assert_eq!(ast.elements[2].origin, Origin::Declared);
        assert_eq!(ast.elements[1].text, "alw next(a) = (a | next(x));");
    }

    #[test]
    fn crlf_input() {
        let ast = parse_spec("sys boolean y;\r\ngar ini y;\r\n").unwrap();
        assert_eq!(ast.elements[0].line, 2);
    }

    #[test]
    fn errors() {
        type Case = (&'static str, fn(&ParseError) -> bool);
        let cases: &[Case] = &[
            ("sys boolean y; gar ini y", |e| matches!(e, ParseError::Syntax { .. })),
            ("sys boolean y;", |e| matches!(e, ParseError::EmptySpec)),
            ("", |e| matches!(e, ParseError::EmptySpec)),
            ("sys boolean y; env boolean y; gar y;", |e| matches!(e, ParseError::DuplicateVariable { .. })),
            ("sys boolean y; gar ini z;", |e| matches!(e, ParseError::UnknownVariable { .. })),
            ("sys Int(0..2) f; gar ini f;", |e| matches!(e, ParseError::Type { .. })),
            ("sys Int(0..2) f; sys boolean y; gar ini f = y;", |e| matches!(e, ParseError::Type { .. })),
            ("sys boolean y; gar ini y + 1 = 2;", |e| matches!(e, ParseError::Type { .. })),
            ("sys boolean y; gar ini next(y);", |e| matches!(e, ParseError::Prime { .. })),
            ("sys boolean y; gar alwEv next(y);", |e| matches!(e, ParseError::Prime { .. })),
            ("env boolean x; sys boolean y; asm ini y;", |e| matches!(e, ParseError::Prime { .. })),
            ("env boolean x; sys boolean y; asm alw next(y);", |e| matches!(e, ParseError::Prime { .. })),
            ("sys boolean y; gar alw next(next(y));", |e| matches!(e, ParseError::Prime { .. })),
            ("env boolean x; sys boolean y; asm respondsTo(x, y);", |e| matches!(e, ParseError::Pattern { .. })),
            ("sys Int(3..1) f; gar ini f = 1;", |e| matches!(e, ParseError::Syntax { .. })),
            ("sys boolean y; monitor boolean a { alwEv a; }", |e| matches!(e, ParseError::Syntax { .. })),
        ];
        for (src, pred) in cases {
            let err = parse_spec(src).expect_err(src);
            assert!(pred(&err), "{src}: unexpected {err:?}");
        }
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_spec("sys boolean y;\ngar ini y &;").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 2, col: 12, message: "expected expression, found `;`".into() });
    }

    #[test]
    fn safety_assumption_may_read_system_state() {
        parse_spec("env boolean x; sys boolean y; asm alw y -> next(x);").unwrap();
    }

    #[test]
    fn negative_range_and_literals() {
        let ast = parse_spec("sys Int(-2..2) v; gar ini v = -1;").unwrap();
        assert_eq!(ast.variables[0].domain, Domain::Int { lo: -2, hi: 2 });
        let reparsed = parse_spec(&ast.to_string()).unwrap();
        assert!(ast.same_structure(&reparsed));
    }
}
