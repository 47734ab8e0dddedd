use thiserror::Error;

use crate::automaton::Violation;
use crate::hoa::HoaError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A property of nice automata that an input failed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceProperty {
    Reachable,
    Normal,
    SafeDeterministic,
    SemanticallyDeterministic,
    Gfg,
    AlphaHomogeneous,
}

impl std::fmt::Display for NiceProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NiceProperty::Reachable => "all states reachable",
            NiceProperty::Normal => "normal",
            NiceProperty::SafeDeterministic => "safe deterministic",
            NiceProperty::SemanticallyDeterministic => "semantically deterministic",
            NiceProperty::Gfg => "good for games",
            NiceProperty::AlphaHomogeneous => "alpha-homogeneous",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("letter {0:?} appears twice in the alphabet")]
    DuplicateLetter(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("lasso period must not be empty")]
    EmptyPeriod,
    #[error("lasso uses letter index {0} outside the alphabet")]
    LassoLetterOutOfRange(usize),
    #[error("invalid automaton: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("state {0} does not exist")]
    NoSuchState(usize),
    #[error(transparent)]
    Hoa(#[from] HoaError),
    #[error("input is not {0}")]
    NotNice(NiceProperty),
    #[error("{what} needs {needed} candidates, above the bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u128,
        bound: u128,
    },
    #[error("{0}")]
    Bound(String),
    #[error("oracle self-check failed: {0}")]
    Oracle(String),
}
