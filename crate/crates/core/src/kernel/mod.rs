//! Explicit-state symbolic kernel: enumerated spaces, bit-vector state sets,
//! assertion evaluation and the controllable predecessor.

mod game;
mod set;
mod space;

use thiserror::Error;

pub use game::GameStructure;
pub use set::StateSet;
pub use space::{Compiled, State, StateSpace, DEFAULT_STATE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("state space exceeds the cap of {cap} states")]
    StateSpaceTooLarge { cap: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("value {value} outside the domain of `{var}`")]
    ValueOutOfDomain { var: String, value: i64 },
    #[error("expression reads next-state variables but no successor was given")]
    MissingSuccessor,
}
