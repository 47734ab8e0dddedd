use std::collections::HashMap;

use crate::automaton::{Automaton, State, Transition};

/// A breakpoint macrostate `(S, O)` with `O ⊆ S`, both sorted.
///
/// `S` is the set of reachable states; `O` holds the states reached by runs
/// that stayed safe since the last breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MacroState {
    pub reach: Vec<State>,
    pub safe: Vec<State>,
}

/// Deterministic co-Büchi automaton produced by the breakpoint construction.
#[derive(Clone, Debug)]
pub struct BreakpointAutomaton {
    pub automaton: Automaton,
    pub macrostates: Vec<MacroState>,
    /// `roots[i]` is the deterministic state for the i-th requested source state.
    pub roots: Vec<State>,
}

impl BreakpointAutomaton {
    pub fn len(&self) -> usize {
        self.macrostates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.macrostates.is_empty()
    }
}

fn union_succ(a: &Automaton, set: &[State], letter: usize, safe_only: bool) -> Vec<State> {
    let mut out: Vec<State> = Vec::new();
    for &p in set {
        for &(d, m) in a.succ(p, letter) {
            if !safe_only || !m.is_alpha() {
                out.push(d);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Determinizes from the initial state only.
pub fn determinize_breakpoint(a: &Automaton) -> BreakpointAutomaton {
    determinize_rooted(a, &[a.initial()])
}

/// Determinizes from each `({q}, {q})` for `q` in `roots`, sharing macrostates.
///
/// On letter σ, `S' = δ(S, σ)` and `O'` is the set of ᾱ σ-successors of `O`.
/// If that set is empty the transition is an α-transition (a breakpoint) and
/// `O'` restarts as `S'`.
pub fn determinize_rooted(a: &Automaton, roots: &[State]) -> BreakpointAutomaton {
    let mut index: HashMap<MacroState, State> = HashMap::new();
    let mut macrostates: Vec<MacroState> = Vec::new();
    let mut queue = 0;
    let mut root_ids = Vec::with_capacity(roots.len());
    for &q in roots {
        let m = MacroState {
            reach: vec![q],
            safe: vec![q],
        };
        let id = *index.entry(m.clone()).or_insert_with(|| {
            macrostates.push(m);
            macrostates.len() - 1
        });
        root_ids.push(id);
    }

    let mut transitions = Vec::new();
    while queue < macrostates.len() {
        let id = queue;
        queue += 1;
        for l in a.letters() {
            let cur = &macrostates[id];
            let reach = union_succ(a, &cur.reach, l, false);
            let kept = union_succ(a, &cur.safe, l, true);
            let (safe, breakpoint) = if kept.is_empty() {
                (reach.clone(), true)
            } else {
                (kept, false)
            };
            let next = MacroState { reach, safe };
            let nid = match index.get(&next) {
                Some(&n) => n,
                None => {
                    macrostates.push(next.clone());
                    index.insert(next, macrostates.len() - 1);
                    macrostates.len() - 1
                }
            };
            transitions.push(if breakpoint {
                Transition::alpha(id, l, nid)
            } else {
                Transition::safe(id, l, nid)
            });
        }
    }

    let initial = root_ids.first().copied().unwrap_or(0);
    let automaton = Automaton::from_parts(a.alphabet().clone(), macrostates.len(), initial, transitions);
    BreakpointAutomaton {
        automaton,
        macrostates,
        roots: root_ids,
    }
}
