mod common;

use common::{lassos, problem, response_holds};
use unrealcore::kernel::{StateSpace, DEFAULT_STATE_CAP};
use unrealcore::reduce::{AssertionKind, Gr1Problem};
use unrealcore::spec::{parse_spec, ElementBody, Expr, Origin, Owner};
use unrealcore::ElementId;

const PAIRS: [(&str, &str); 6] = [("x", "y"), ("x & !y", "y"), ("x | y", "x & y"), ("true", "y"), ("x", "false"), ("!x", "x")];

fn pattern_problem(p: &str, q: &str) -> (Gr1Problem, ElementId) {
    let text = format!("env boolean x;\nsys boolean y;\ngar respondsTo({p}, {q});\n");
    let problem = problem(&text);
    let id = problem.guarantee_universe().iter().next().unwrap();
    (problem, id)
}

#[test]
fn responds_to_reduces_to_one_aux_variable_and_three_assertions() {
    let (p, id) = pattern_problem("x", "y");
    assert_eq!(p.element(id).unwrap().origin, Origin::Pattern);
    let aux: Vec<_> = p.aux_vars_of(id).collect();
    assert_eq!(aux.len(), 1);
    assert_eq!(aux[0].owner, Owner::Aux);
    assert!(aux[0].domain.is_boolean());
    let kinds: Vec<_> = p.assertions_of(id).map(|a| a.kind).collect();
    assert_eq!(kinds, [AssertionKind::Initial, AssertionKind::Safety, AssertionKind::Justice]);
    assert!(p.assertions_of(id).all(|a| a.owner == id));
    assert!(p.assertions_of(id).all(|a| a.expr.variables().contains(aux[0].name.as_str())));
}

#[test]
fn two_patterns_get_distinct_aux_variables() {
    let p = problem("env boolean x;\nsys boolean y;\ngar respondsTo(x, y);\ngar respondsTo(!x, !y);\n");
    let names: Vec<_> = p.guarantee_universe().iter().flat_map(|id| p.aux_vars_of(id).map(|v| v.name.clone())).collect();
    assert_eq!(names.len(), 2);
    assert_ne!(names[0], names[1]);
}

#[test]
fn patterns_are_rejected_on_the_assumption_side() {
    assert!(parse_spec("env boolean x;\nsys boolean y;\nasm respondsTo(x, y);\n").is_err());
}

/// Accepting-run check on the product of a lasso with the pattern's monitor
/// state: some run satisfying the initial and safety assertions visits a
/// justice state inside a cycle.
fn monitor_accepts(space: &StateSpace, ini: &Expr, safety: &Expr, justice: &Expr, states: &[[usize; 2]], prefix: usize) -> bool {
    let len = states.len();
    let succ = |i: usize| if i + 1 < len { i + 1 } else { prefix };
    // Node (position, pending) has index 2 * position + pending.
    let state = |node: usize| states[node / 2][node % 2];
    let edges = |node: usize| {
        let to = succ(node / 2);
        (0..2).map(move |b| 2 * to + b).filter(move |&m| space.eval(safety, state(node), Some(state(m))).unwrap())
    };
    let reach = |from: Vec<usize>| {
        let mut seen = vec![false; 2 * len];
        let mut stack = from;
        while let Some(n) = stack.pop() {
            for m in edges(n) {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        seen
    };
    let initial: Vec<usize> = (0..2).filter(|&b| space.eval(ini, state(b), None).unwrap()).collect();
    let mut reachable = reach(initial.clone());
    for n in initial {
        reachable[n] = true;
    }
    (0..2 * len).any(|n| reachable[n] && space.eval(justice, state(n), None).unwrap() && reach(vec![n])[n])
}

#[test]
fn responds_to_matches_response_semantics_on_lassos() {
    for (pe, qe) in PAIRS {
        let (p, id) = pattern_problem(pe, qe);
        let pend = p.aux_vars_of(id).next().unwrap().name.clone();
        let space = StateSpace::new(p.variables(), DEFAULT_STATE_CAP).unwrap();
        let of = |kind| p.assertions_of(id).find(|a| a.kind == kind).unwrap().expr.clone();
        let (ini, safety, justice) = (of(AssertionKind::Initial), of(AssertionKind::Safety), of(AssertionKind::Justice));
        let ast = parse_spec(&format!("env boolean x;\nsys boolean y;\ngar respondsTo({pe}, {qe});\n")).unwrap();
        let ElementBody::RespondsTo { trigger, response } = &ast.elements[0].body else {
            panic!("expected a pattern");
        };
        let mut checked = 0;
        for prefix in 0..=3 {
            for period in 1..=3 {
                for word in lassos(4, prefix, period) {
                    let states: Vec<[usize; 2]> = word
                        .iter()
                        .map(|&letter| {
                            let (x, y) = ((letter & 1) as i64, (letter >> 1) as i64);
                            [0, 1].map(|b| space.state_of(&[("x", x), ("y", y), (pend.as_str(), b)]).unwrap())
                        })
                        .collect();
                    let truth = |e: &Expr| -> Vec<bool> { states.iter().map(|s| space.eval(e, s[0], None).unwrap()).collect() };
                    let expected = response_holds(&truth(trigger), &truth(response), prefix);
                    let actual = monitor_accepts(&space, &ini, &safety, &justice, &states, prefix);
                    assert_eq!(actual, expected, "respondsTo({pe}, {qe}) on {word:?} looping at {prefix}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 1000);
    }
}
