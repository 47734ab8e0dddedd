use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::automaton::{disjoint_union, Automaton, LassoWord, State};
use crate::error::Result;
use crate::par::{self, Exec};
use crate::semantics::{det_containment_counterexample, det_contains, determinize_rooted};
use crate::structure::{is_nontrivial, safe_graph, sccs};

/// Relation tables over the states of one automaton.
///
/// `equiv` is `∼` (equal languages); `safe_contained(q, s)` holds iff
/// `L_safe(q) ⊆ L_safe(s)`. `≈` and `≾` are derived from the two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivRelations {
    n: usize,
    equiv: Vec<bool>,
    safe_contained: Vec<bool>,
}

impl EquivRelations {
    pub fn from_tables(n: usize, equiv: Vec<bool>, safe_contained: Vec<bool>) -> Self {
        assert_eq!(equiv.len(), n * n);
        assert_eq!(safe_contained.len(), n * n);
        EquivRelations {
            n,
            equiv,
            safe_contained,
        }
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    /// `q ∼ s`
    pub fn equiv(&self, q: State, s: State) -> bool {
        self.equiv[q * self.n + s]
    }

    pub fn safe_contained(&self, q: State, s: State) -> bool {
        self.safe_contained[q * self.n + s]
    }

    /// `q ≈ s`: equivalent with equal safe languages.
    pub fn strongly_equiv(&self, q: State, s: State) -> bool {
        self.equiv(q, s) && self.safe_contained(q, s) && self.safe_contained(s, q)
    }

    /// `q ≾ s`: equivalent, and the safe language of `q` is contained in that of `s`.
    pub fn subsafe(&self, q: State, s: State) -> bool {
        self.equiv(q, s) && self.safe_contained(q, s)
    }

    /// `∼`-class index per state, classes numbered by least member.
    pub fn equiv_classes(&self) -> Vec<usize> {
        classes_of(self.n, |q, s| self.equiv(q, s))
    }

    /// `≈`-class index per state, classes numbered by least member.
    pub fn strong_classes(&self) -> Vec<usize> {
        classes_of(self.n, |q, s| self.strongly_equiv(q, s))
    }
}

fn classes_of(n: usize, same: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for q in 0..n {
        if class[q] != usize::MAX {
            continue;
        }
        for (s, c) in class.iter_mut().enumerate().skip(q) {
            if *c == usize::MAX && same(q, s) {
                *c = next;
            }
        }
        next += 1;
    }
    class
}

pub fn compute_relations(a: &Automaton) -> EquivRelations {
    compute_relations_with(a, Exec::default())
}

/// Computes `∼` through one breakpoint determinization rooted at every
/// state, and safe containment with [`safe_contained_table`].
pub fn compute_relations_with(a: &Automaton, exec: Exec) -> EquivRelations {
    let n = a.num_states();
    let all: Vec<State> = a.states().collect();
    let det = determinize_rooted(a, &all);
    let d = &det.automaton;
    let roots = &det.roots;

    let contained = par::map_range(exec, n * n, |i| {
        let (q, s) = (i / n, i % n);
        roots[q] == roots[s] || det_contains(d, roots[q], d, roots[s]).expect("same alphabet")
    });
    let mut equiv = vec![false; n * n];
    for q in 0..n {
        for s in 0..n {
            equiv[q * n + s] = contained[q * n + s] && contained[s * n + q];
        }
    }
    EquivRelations {
        n,
        equiv,
        safe_contained: safe_contained_table(a, exec),
    }
}

/// Relations over the disjoint union of `a` and `b`; states of `b` start at
/// the returned offset.
pub fn compute_relations_cross(a: &Automaton, b: &Automaton) -> Result<(EquivRelations, usize)> {
    let (u, off) = disjoint_union(a, b)?;
    Ok((compute_relations(&u), off))
}

/// States with an infinite run of ᾱ-transitions.
fn live_states(a: &Automaton) -> Vec<bool> {
    let adj = safe_graph(a);
    let n = adj.len();
    let mut live = vec![false; n];
    let mut rev = vec![Vec::new(); n];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            rev[w].push(v);
        }
    }
    let mut stack = Vec::new();
    for c in sccs(&adj) {
        if is_nontrivial(&adj, &c) {
            for v in c {
                live[v] = true;
                stack.push(v);
            }
        }
    }
    while let Some(v) = stack.pop() {
        for &u in &rev[v] {
            if !live[u] {
                live[u] = true;
                stack.push(u);
            }
        }
    }
    live
}

/// `table[q * n + s]` holds iff `L_safe(q) ⊆ L_safe(s)`.
///
/// Safe languages are safety languages, so containment fails iff some finite
/// word can be read safely from `q` into a live state while every safe run of
/// `s` on it dies. The right-hand side is subset-constructed; for
/// safe-deterministic automata the subsets are singletons and this is the
/// plain pairwise simulation fixpoint.
pub fn safe_contained_table(a: &Automaton, exec: Exec) -> Vec<bool> {
    let n = a.num_states();
    let live = live_states(a);
    let live_safe_succ = |set: &[State], l: usize| -> Vec<State> {
        let mut out: Vec<State> = set
            .iter()
            .flat_map(|&p| a.safe_succ(p, l))
            .filter(|&d| live[d])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    par::map_range(exec, n * n, |i| {
        let (q, s) = (i / n, i % n);
        if q == s || !live[q] {
            return true;
        }
        if !live[s] {
            return false;
        }
        let start = (q, vec![s]);
        let mut seen: HashSet<(State, Vec<State>)> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((p, set)) = queue.pop_front() {
            for l in a.letters() {
                let nexts: Vec<State> = a.safe_succ(p, l).filter(|&d| live[d]).collect();
                if nexts.is_empty() {
                    continue;
                }
                let t = live_safe_succ(&set, l);
                if t.is_empty() {
                    return false;
                }
                for p2 in nexts {
                    let node = (p2, t.clone());
                    if seen.insert(node.clone()) {
                        queue.push_back(node);
                    }
                }
            }
        }
        true
    })
}

/// `L(a) = L(b)`, decided on one determinization of the disjoint union.
pub fn language_equiv(a: &Automaton, b: &Automaton) -> Result<bool> {
    Ok(language_counterexample(a, b)?.is_none())
}

/// A lasso in the symmetric difference of `L(a)` and `L(b)`, if any.
pub fn language_counterexample(a: &Automaton, b: &Automaton) -> Result<Option<LassoWord>> {
    let (u, off) = disjoint_union(a, b)?;
    let det = determinize_rooted(&u, &[a.initial(), off + b.initial()]);
    let d = &det.automaton;
    let (ra, rb) = (det.roots[0], det.roots[1]);
    if let Some(w) = det_containment_counterexample(d, ra, d, rb)? {
        return Ok(Some(w));
    }
    det_containment_counterexample(d, rb, d, ra)
}
