//! GR(1) realizability checking and unrealizable core computation.
//!
//! A specification is parsed ([`spec::parse_spec`]), reduced to pure GR(1)
//! with per-element traceability ([`reduce::reduce`]), and solved over an
//! explicitly enumerated state space ([`solver`]). Unrealizability is a
//! monotonic criterion over sets of guarantee IDs, so the generic
//! minimizers in [`minimize`] apply to it directly. [`quickcore`] finds one
//! core with a staged strategy and [`punch`] enumerates all of them.
//!
//! ```
//! use unrealcore::{quickcore, reduce, spec};
//!
//! let text = "env boolean x;\nsys boolean y;\ngar alw next(y) = next(x);\ngar alw !y;\ngar ini true;\n";
//! let problem = reduce::reduce(&spec::parse_spec(text)?);
//! let run = quickcore::quickcore(&problem, &quickcore::Options::default())?;
//! assert_eq!(problem.lines_of(&run.core), [3, 4]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod element;
pub mod kernel;
pub mod minimize;
pub mod punch;
pub mod quickcore;
pub mod reduce;
pub mod report;
pub mod solver;
pub mod spec;

use thiserror::Error;

pub use element::{ElementId, ElementSet};

/// Failure of a check, a minimizer, or a core enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] spec::ParseError),
    #[error(transparent)]
    Solver(#[from] solver::SolverError),
    #[error("time limit exceeded")]
    Timeout,
    #[error("the specification is realizable, so it has no unrealizable core")]
    Realizable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("universe of {size} elements exceeds the limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
}
