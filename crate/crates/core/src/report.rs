//! Machine-readable and text reports with source traceability.
//!
//! Every element in a report carries its ID, kind, origin, source line and
//! source text, so a logged core can be re-checked later against the
//! specification without rerunning the search ([`validate`]).

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::element::{ElementId, ElementSet};
use crate::minimize::{is_core, Criterion};
use crate::punch::{AllCoresResult, AllCoresStats};
use crate::reduce::Gr1Problem;
use crate::solver::Unrealizability;
use crate::spec::{ElementKind, Origin};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub id: ElementId,
    pub kind: ElementKind,
    pub source_line: u32,
    pub text: String,
    pub origin: Origin,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportStats {
    pub actual_checks: u64,
    pub memo_hits: u64,
    pub core_computations: u64,
    pub elapsed_ms: u64,
}

impl From<AllCoresStats> for ReportStats {
    fn from(s: AllCoresStats) -> Self {
        ReportStats {
            actual_checks: s.actual_checks,
            memo_hits: s.memo_hits,
            core_computations: s.core_computations,
            elapsed_ms: s.elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub realizable: bool,
    pub algorithm: String,
    pub cores: Vec<Vec<ElementEntry>>,
    pub intersection: Option<Vec<ElementEntry>>,
    pub complete: bool,
    pub stats: ReportStats,
}

impl Report {
    pub fn realizability(realizable: bool, stats: ReportStats) -> Report {
        Report { realizable, algorithm: "check".into(), cores: Vec::new(), intersection: None, complete: true, stats }
    }

    pub fn single_core(problem: &Gr1Problem, algorithm: &str, core: &ElementSet, stats: ReportStats) -> Report {
        Report {
            realizable: false,
            algorithm: algorithm.into(),
            cores: vec![entries(problem, core)],
            intersection: None,
            complete: true,
            stats,
        }
    }

    pub fn all_cores(problem: &Gr1Problem, algorithm: &str, result: &AllCoresResult) -> Report {
        Report {
            realizable: false,
            algorithm: algorithm.into(),
            cores: result.cores.iter().map(|c| entries(problem, c)).collect(),
            intersection: result.intersection.as_ref().map(|c| entries(problem, c)),
            complete: result.complete,
            stats: result.stats.into(),
        }
    }

    pub fn core_sets(&self) -> Vec<ElementSet> {
        self.cores.iter().map(|c| ids(c)).collect()
    }

    pub fn intersection_set(&self) -> Option<ElementSet> {
        self.intersection.as_deref().map(ids)
    }

    /// Human-readable rendering. `stats` adds the statistics line.
    pub fn to_text(&self, stats: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", if self.realizable { "REALIZABLE" } else { "UNREALIZABLE" });
        if self.algorithm != "check" {
            let _ = writeln!(out, "algorithm: {}", self.algorithm);
        }
        for (k, core) in self.cores.iter().enumerate() {
            let _ = writeln!(out, "core {}: lines {}", k + 1, lines(core));
            for e in core {
                let _ = writeln!(out, "  {e}");
            }
        }
        if let Some(ci) = &self.intersection {
            let _ = writeln!(out, "intersection: lines {}", lines(ci));
        }
        if !self.complete {
            let _ = writeln!(out, "incomplete: time limit reached");
        }
        if stats {
            let s = &self.stats;
            let _ = writeln!(
                out,
                "stats: actual_checks={} memo_hits={} core_computations={} elapsed_ms={}",
                s.actual_checks, s.memo_hits, s.core_computations, s.elapsed_ms
            );
        }
        out
    }
}

impl fmt::Display for ElementEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} line {} [{}, {}] {}", self.id, self.source_line, self.kind.keyword(), self.origin.label(), self.text)
    }
}

fn lines(es: &[ElementEntry]) -> String {
    if es.is_empty() {
        return "(none)".into();
    }
    es.iter().map(|e| e.source_line.to_string()).collect::<Vec<_>>().join(", ")
}

fn ids(es: &[ElementEntry]) -> ElementSet {
    es.iter().map(|e| e.id).collect()
}

pub fn entries(problem: &Gr1Problem, set: &ElementSet) -> Vec<ElementEntry> {
    set.iter()
        .filter_map(|id| problem.element(id))
        .map(|e| ElementEntry {
            id: e.id,
            kind: e.kind,
            source_line: e.source_line,
            text: e.text.clone(),
            origin: e.origin.clone(),
        })
        .collect()
}

/// Re-checks a report against a specification, independently of how it was
/// produced. Returns the list of discrepancies; empty means valid.
///
/// Element metadata must match the specification, every core must be a
/// locally minimal unrealizable guarantee set, and a complete report's
/// intersection must equal the intersection of its cores.
pub fn validate(problem: &Gr1Problem, report: &Report) -> Result<Vec<String>, Error> {
    let mut issues = Vec::new();
    let known = |e: &ElementEntry| entries(problem, &ElementSet::from_ids([e.id])).first() == Some(e);
    for e in report.cores.iter().flatten().chain(report.intersection.iter().flatten()) {
        if !known(e) {
            issues.push(format!("element {} does not match the specification", e.id));
        }
    }
    let mut c = Unrealizability::new(problem);
    let universe = problem.guarantee_universe().clone();
    if report.realizable == c.check(&universe)? {
        issues.push(format!("realizable = {} is wrong", report.realizable));
    }
    let cores = report.core_sets();
    for (k, core) in cores.iter().enumerate() {
        if !core.is_subset(&universe) {
            issues.push(format!("core {} contains non-guarantee IDs", k + 1));
        } else if !is_core(core, &mut c)? {
            issues.push(format!("core {} is not a locally minimal unrealizable set", k + 1));
        }
    }
    if let (true, Some(ci), Some(first)) = (report.complete, report.intersection_set(), cores.first()) {
        let expected = cores.iter().fold(first.clone(), |a, c| a.intersection(c));
        if ci != expected {
            issues.push(format!("intersection {ci} differs from the intersection of the cores {expected}"));
        }
    }
    Ok(issues)
}
