use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, LassoWord, Letter, Mark, State};
use crate::error::{Error, Result};
use crate::structure::{component_index, sccs};

/// The synchronized product of two deterministic automata, explored from one
/// pair of states.
struct Product {
    nodes: Vec<(State, State)>,
    // per node and letter: (target node, mark in d1, mark in d2)
    edges: Vec<Vec<(usize, Mark, Mark)>>,
    parent: Vec<Option<(usize, Letter)>>,
}

fn explore(d1: &Automaton, q: State, d2: &Automaton, s: State) -> Product {
    let mut index = HashMap::new();
    let mut nodes = vec![(q, s)];
    let mut parent = vec![None];
    let mut edges = Vec::new();
    index.insert((q, s), 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (p1, p2) = nodes[v];
        let mut out = Vec::with_capacity(d1.num_letters());
        for l in d1.letters() {
            let (t1, m1) = d1.det_step(p1, l);
            let (t2, m2) = d2.det_step(p2, l);
            let u = *index.entry((t1, t2)).or_insert_with(|| {
                nodes.push((t1, t2));
                parent.push(Some((v, l)));
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            out.push((u, m1, m2));
        }
        if edges.len() <= v {
            edges.resize(v + 1, Vec::new());
        }
        edges[v] = out;
    }
    Product {
        nodes,
        edges,
        parent,
    }
}

fn check_inputs(d1: &Automaton, q: State, d2: &Automaton, s: State) -> Result<()> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if q >= d1.num_states() {
        return Err(Error::NoSuchState(q));
    }
    if s >= d2.num_states() {
        return Err(Error::NoSuchState(s));
    }
    assert!(
        d1.is_deterministic() && d2.is_deterministic(),
        "containment check needs deterministic automata"
    );
    Ok(())
}

/// Finds a lasso in `L(d1^q) \ L(d2^s)`.
///
/// A counterexample is a reachable product cycle that takes no α-transition
/// of `d1` and at least one of `d2`; such cycles are found as SCCs of the
/// product restricted to `d1`'s ᾱ-transitions that contain an internal
/// `d2`-α edge.
pub fn det_containment_counterexample(
    d1: &Automaton,
    q: State,
    d2: &Automaton,
    s: State,
) -> Result<Option<LassoWord>> {
    check_inputs(d1, q, d2, s)?;
    let p = explore(d1, q, d2, s);
    let n = p.nodes.len();
    let adj: Vec<Vec<usize>> = p
        .edges
        .iter()
        .map(|es| es.iter().filter(|e| !e.1.is_alpha()).map(|e| e.0).collect())
        .collect();
    let comps = sccs(&adj);
    let comp_of = component_index(n, &comps);

    for v in 0..n {
        for (l, &(u, m1, m2)) in p.edges[v].iter().enumerate() {
            if m1.is_alpha() || !m2.is_alpha() || comp_of[u] != comp_of[v] {
                continue;
            }
            // prefix: tree path to v
            let mut prefix = Vec::new();
            let mut cur = v;
            while let Some((par, pl)) = p.parent[cur] {
                prefix.push(pl);
                cur = par;
            }
            prefix.reverse();
            // period: l, then a path u -> v inside the component
            let c = comp_of[v];
            let mut back: Vec<Option<(usize, Letter)>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[u] = true;
            let mut queue = VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                if x == v {
                    break;
                }
                for (xl, &(y, ym1, _)) in p.edges[x].iter().enumerate() {
                    if !ym1.is_alpha() && comp_of[y] == c && !seen[y] {
                        seen[y] = true;
                        back[y] = Some((x, xl));
                        queue.push_back(y);
                    }
                }
            }
            let mut tail = Vec::new();
            let mut cur = v;
            while cur != u {
                let (x, xl) = back[cur].expect("component path");
                tail.push(xl);
                cur = x;
            }
            tail.reverse();
            let mut period = vec![l];
            period.extend(tail);
            return Ok(Some(LassoWord::new(prefix, period)?));
        }
    }
    Ok(None)
}

/// Decides `L(d1^q) ⊆ L(d2^s)` for deterministic, total automata.
pub fn det_contains(d1: &Automaton, q: State, d2: &Automaton, s: State) -> Result<bool> {
    Ok(det_containment_counterexample(d1, q, d2, s)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, Transition};
    use crate::fixtures;
    use crate::semantics::lasso_member;

    fn single(all_alpha: bool) -> Automaton {
        let sigma = Alphabet::with_size(2).unwrap();
        let ts = (0..2).map(|l| {
            if all_alpha {
                Transition::alpha(0, l, 0)
            } else {
                Transition::safe(0, l, 0)
            }
        });
        Automaton::new(sigma, 1, 0, ts).unwrap()
    }

    #[test]
    fn reflexive() {
        for a in [fixtures::fig2(), fixtures::fig6d1(), fixtures::fig1a()] {
            for q in a.states() {
                assert!(det_contains(&a, q, &a, q).unwrap());
            }
        }
    }

    #[test]
    fn empty_and_universal() {
        let universal = single(false);
        let empty = single(true);
        assert!(det_contains(&empty, 0, &universal, 0).unwrap());
        assert!(!det_contains(&universal, 0, &empty, 0).unwrap());
    }

    #[test]
    fn counterexample_is_a_witness() {
        let universal = {
            let sigma = Alphabet::new(["b", "c"]).unwrap();
            Automaton::new(sigma, 1, 0, [Transition::safe(0, 0, 0), Transition::safe(0, 1, 0)])
                .unwrap()
        };
        let d = fixtures::fig6d1();
        let w = det_containment_counterexample(&universal, 0, &d, 0)
            .unwrap()
            .expect("b^ω is missing from fig6d1");
        assert!(lasso_member(&universal, 0, &w).unwrap());
        assert!(!lasso_member(&d, 0, &w).unwrap());
        assert!(det_contains(&d, 0, &universal, 0).unwrap());
    }

    #[test]
    fn fig6_automata_are_equivalent() {
        let (d1, d2) = (fixtures::fig6d1(), fixtures::fig6d2());
        for q in 0..2 {
            assert!(det_contains(&d1, q, &d2, q).unwrap());
            assert!(det_contains(&d2, q, &d1, q).unwrap());
        }
        assert!(matches!(
            det_contains(&d1, 0, &fixtures::fig2(), 0),
            Err(Error::AlphabetMismatch)
        ));
    }
}
