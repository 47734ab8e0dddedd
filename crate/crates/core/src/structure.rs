//! Graph-level analysis: strongly connected components, safe components,
//! normalization and the syntactic niceness predicates.

use serde::Serialize;

use crate::automaton::{Automaton, Mark, State, Transition};
use crate::semantics::EquivRelations;

/// Strongly connected components of `adj`, in reverse topological order
/// (every edge leaving a component points to a component listed earlier).
///
/// Vertices are visited in ascending order and successors in the order given,
/// so the numbering is reproducible.
pub fn sccs(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    // explicit call stack of (vertex, next edge position)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Component index of every vertex, for a partition returned by [`sccs`].
pub fn component_index(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut of = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            of[v] = i;
        }
    }
    of
}

/// For each component, whether it has no edge to another component.
pub fn ergodic_components(adj: &[Vec<usize>], comps: &[Vec<usize>]) -> Vec<bool> {
    let of = component_index(adj.len(), comps);
    comps
        .iter()
        .enumerate()
        .map(|(i, c)| c.iter().all(|&v| adj[v].iter().all(|&w| of[w] == i)))
        .collect()
}

/// Whether the component contains a cycle (more than one vertex or a self-loop).
pub fn is_nontrivial(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// The safe components `S(A)`: SCCs of the graph of ᾱ-transitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SafeDecomposition {
    pub components: Vec<Vec<State>>,
    pub component_of: Vec<usize>,
}

impl SafeDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn same_component(&self, q: State, s: State) -> bool {
        self.component_of[q] == self.component_of[s]
    }
}

/// Successor lists of the ᾱ-restricted graph, ascending and duplicate-free.
pub fn safe_graph(a: &Automaton) -> Vec<Vec<usize>> {
    graph_of(a, |m| !m.is_alpha())
}

/// Successor lists of the full transition graph.
pub fn transition_graph(a: &Automaton) -> Vec<Vec<usize>> {
    graph_of(a, |_| true)
}

fn graph_of(a: &Automaton, keep: impl Fn(Mark) -> bool) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); a.num_states()];
    for t in a.transitions() {
        if keep(t.mark) {
            adj[t.src].push(t.dst);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    adj
}

pub fn safe_components(a: &Automaton) -> SafeDecomposition {
    let adj = safe_graph(a);
    let components = sccs(&adj);
    let component_of = component_index(a.num_states(), &components);
    SafeDecomposition {
        components,
        component_of,
    }
}

/// Re-marks as α every ᾱ-transition whose endpoints lie in different safe
/// components. The transition relation itself is unchanged.
pub fn normalize(a: &Automaton) -> Automaton {
    let dec = safe_components(a);
    let ts: Vec<Transition> = a
        .transitions()
        .iter()
        .map(|t| {
            if t.mark == Mark::NonAlpha && !dec.same_component(t.src, t.dst) {
                Transition::alpha(t.src, t.letter, t.dst)
            } else {
                *t
            }
        })
        .collect();
    let mut out = Automaton::from_parts(a.alphabet().clone(), a.num_states(), a.initial(), ts);
    if let Some(n) = a.name() {
        out = out.with_name(n);
    }
    out
}

/// States reachable from the initial state.
pub fn reachable(a: &Automaton) -> Vec<bool> {
    let adj = transition_graph(a);
    let mut seen = vec![false; a.num_states()];
    let mut stack = vec![a.initial()];
    seen[a.initial()] = true;
    while let Some(q) = stack.pop() {
        for &d in &adj[q] {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    seen
}

pub fn all_reachable(a: &Automaton) -> bool {
    reachable(a).into_iter().all(|r| r)
}

/// Drops unreachable states, keeping the relative order of the rest.
pub fn trim_unreachable(a: &Automaton) -> Automaton {
    a.restrict(&reachable(a), a.initial()).0
}

/// At most one ᾱ-successor per state and letter.
pub fn is_safe_deterministic(a: &Automaton) -> bool {
    a.states()
        .all(|q| a.letters().all(|l| a.safe_succ(q, l).count() <= 1))
}

/// Per state and letter, all transitions are α or all are ᾱ.
pub fn is_alpha_homogeneous(a: &Automaton) -> bool {
    a.states().all(|q| {
        a.letters().all(|l| {
            let cell = a.succ(q, l);
            cell.iter().all(|(_, m)| *m == cell[0].1)
        })
    })
}

/// No ᾱ-transition connects two different safe components.
pub fn is_normal(a: &Automaton) -> bool {
    let dec = safe_components(a);
    a.transitions()
        .iter()
        .all(|t| t.mark.is_alpha() || dec.same_component(t.src, t.dst))
}

/// All σ-successors of every state are language-equivalent.
pub fn is_semantically_deterministic(a: &Automaton, rel: &EquivRelations) -> bool {
    a.states().all(|q| {
        a.letters().all(|l| {
            let cell = a.succ(q, l);
            cell.iter().all(|&(d, _)| rel.equiv(cell[0].0, d))
        })
    })
}
