//! Minimization and canonical forms for transition-based co-Büchi automata.
//!
//! The pipeline takes a tDCW, or a nice GFG-tNCW, to a minimal GFG-tNCW
//! ([`minimize::minimize`]) and from there to one of two canonical forms
//! ([`canon::canonical_form`]). Equivalent inputs give isomorphic canonical
//! forms ([`iso::isomorphic`]). The [`oracle`] module holds independent
//! checks used by the tests.

pub mod automaton;
pub mod canon;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod hoa;
pub mod iso;
pub mod minimize;
pub mod oracle;
pub mod par;
pub mod random;
pub mod semantics;
pub mod structure;

pub use automaton::{disjoint_union, Alphabet, Automaton, LassoWord, Letter, Mark, State, Transition};
pub use canon::{canonical_form, Flavor};
pub use error::{Error, NiceProperty, Result};
pub use iso::{isomorphic, safe_isomorphic, IsoWitness, Refusal};
pub use minimize::minimize;
pub use par::Exec;
