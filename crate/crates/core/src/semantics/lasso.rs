use crate::automaton::{Automaton, LassoWord, State};
use crate::error::{Error, Result};
use crate::structure::{is_nontrivial, sccs};

/// Decides `prefix · period^ω ∈ L(A^q)`.
///
/// Builds the product of the automaton with the lasso shape and accepts iff
/// some reachable product node lies on a cycle of ᾱ-transitions. Such a cycle
/// always sits in the periodic part of the shape.
pub fn lasso_member(a: &Automaton, q: State, w: &LassoWord) -> Result<bool> {
    if q >= a.num_states() {
        return Err(Error::NoSuchState(q));
    }
    if let Some(l) = w.max_letter() {
        if l >= a.num_letters() {
            return Err(Error::LassoLetterOutOfRange(l));
        }
    }
    let len = w.shape_len();
    let node = |s: State, pos: usize| s * len + pos;
    let total = a.num_states() * len;

    let mut seen = vec![false; total];
    let mut order = Vec::new();
    let mut stack = vec![node(q, 0)];
    seen[node(q, 0)] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        let (s, pos) = (v / len, v % len);
        let next = w.next_pos(pos);
        for &(d, _) in a.succ(s, w.letter_at(pos)) {
            let u = node(d, next);
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }

    let mut safe_adj = vec![Vec::new(); total];
    for &v in &order {
        let (s, pos) = (v / len, v % len);
        let next = w.next_pos(pos);
        for d in a.safe_succ(s, w.letter_at(pos)) {
            safe_adj[v].push(node(d, next));
        }
    }
    Ok(sccs(&safe_adj)
        .iter()
        .any(|c| seen[c[0]] && is_nontrivial(&safe_adj, c)))
}
