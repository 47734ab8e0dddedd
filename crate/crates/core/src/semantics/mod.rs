//! Exact language-level decision procedures.
//!
//! Everything here is ground truth for the rest of the crate: lasso
//! membership, breakpoint determinization, containment of deterministic
//! automata, and the tables for `∼`, safe containment, `≈` and `≾`.

mod breakpoint;
mod containment;
mod lasso;
mod relations;

pub use breakpoint::{determinize_breakpoint, determinize_rooted, BreakpointAutomaton, MacroState};
pub use containment::{det_contains, det_containment_counterexample};
pub use lasso::lasso_member;
pub use relations::{
    compute_relations, compute_relations_cross, compute_relations_with, language_equiv,
    language_counterexample, safe_contained_table, EquivRelations,
};
