//! Minimization of nice GFG-tNCWs in two steps: restrict to a frontier of
//! safe components (safe centralization), then merge strongly equivalent
//! states (safe minimization).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::automaton::{Automaton, State, Transition};
use crate::error::{Error, NiceProperty, Result};
use crate::oracle::gfg_verify;
use crate::semantics::{compute_relations, EquivRelations};
use crate::structure::{
    ergodic_components, is_alpha_homogeneous, is_safe_deterministic,
    is_semantically_deterministic, normalize, safe_components, sccs, trim_unreachable,
    SafeDecomposition,
};

/// Default cap on the number of frontiers [`admissible_frontiers`] lists.
pub const DEFAULT_FRONTIER_BOUND: usize = 10_000;

/// Brings `a` into nice form: drops unreachable states and normalizes.
///
/// Accepted inputs are deterministic automata, and safe-deterministic,
/// semantically deterministic automata that the game oracle confirms are
/// good for games from every state.
pub fn niceify(a: &Automaton) -> Result<Automaton> {
    a.ensure_valid()?;
    let b = normalize(&trim_unreachable(a));
    if b.is_deterministic() {
        return Ok(b);
    }
    if !is_safe_deterministic(&b) {
        return Err(Error::NotNice(NiceProperty::SafeDeterministic));
    }
    let rel = compute_relations(&b);
    if !is_semantically_deterministic(&b, &rel) {
        return Err(Error::NotNice(NiceProperty::SemanticallyDeterministic));
    }
    for q in b.states() {
        if gfg_verify(&b.with_initial(q))?.is_none() {
            return Err(Error::NotNice(NiceProperty::Gfg));
        }
    }
    Ok(b)
}

/// The relation `H` over safe components, a frontier, and the initial state
/// of the frontier automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontierPlan {
    pub components: SafeDecomposition,
    /// `h[i][j]`: some state of component `i` is `≾` some state of component `j`.
    pub h: Vec<Vec<bool>>,
    /// Component indices, ascending.
    pub frontier: Vec<usize>,
    pub chosen_initial: State,
}

impl FrontierPlan {
    /// States of the frontier components, ascending.
    pub fn states(&self) -> Vec<State> {
        let mut out: Vec<State> = self
            .frontier
            .iter()
            .flat_map(|&c| self.components.components[c].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// `H(S, S')` for every pair of safe components.
pub fn compute_h(a: &Automaton, rel: &EquivRelations) -> (SafeDecomposition, Vec<Vec<bool>>) {
    let dec = safe_components(a);
    let m = dec.len();
    let mut h = vec![vec![false; m]; m];
    for q in a.states() {
        for s in a.states() {
            if rel.subsafe(q, s) {
                h[dec.component_of[q]][dec.component_of[s]] = true;
            }
        }
    }
    (dec, h)
}

/// Ergodic SCCs of the graph `⟨S(A), H⟩`, each as ascending component indices.
pub fn ergodic_h_classes(h: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = h
        .iter()
        .enumerate()
        .map(|(i, row)| (0..row.len()).filter(|&j| j != i && row[j]).collect())
        .collect();
    let comps = sccs(&adj);
    let ergodic = ergodic_components(&adj, &comps);
    let mut out: Vec<Vec<usize>> = comps
        .into_iter()
        .zip(ergodic)
        .filter(|(_, e)| *e)
        .map(|(c, _)| c)
        .collect();
    out.sort();
    out
}

/// The initial state of `B_S`: `q0` if it survives, else the least frontier
/// state `q'` with `q0 ≾ q'`.
fn initial_for(a: &Automaton, rel: &EquivRelations, states: &[State]) -> State {
    let q0 = a.initial();
    if states.contains(&q0) {
        return q0;
    }
    *states
        .iter()
        .find(|&&s| rel.subsafe(q0, s))
        .expect("a frontier covers every component")
}

/// Plan for a given frontier (component indices).
pub fn plan_for_frontier(a: &Automaton, rel: &EquivRelations, frontier: Vec<usize>) -> FrontierPlan {
    let (components, h) = compute_h(a, rel);
    let mut plan = FrontierPlan {
        components,
        h,
        frontier,
        chosen_initial: 0,
    };
    plan.frontier.sort_unstable();
    plan.chosen_initial = initial_for(a, rel, &plan.states());
    plan
}

/// One component per ergodic `H`-SCC: the one holding the least state.
pub fn choose_frontier(a: &Automaton, rel: &EquivRelations) -> FrontierPlan {
    let (components, h) = compute_h(a, rel);
    let frontier = ergodic_h_classes(&h)
        .into_iter()
        .map(|class| {
            *class
                .iter()
                .min_by_key(|&&c| components.components[c][0])
                .expect("non-empty class")
        })
        .collect();
    plan_for_frontier(a, rel, frontier)
}

/// Every frontier obtained by picking one component per ergodic `H`-SCC.
pub fn admissible_frontiers(a: &Automaton, rel: &EquivRelations, bound: usize) -> Result<Vec<Vec<usize>>> {
    let (_, h) = compute_h(a, rel);
    let classes = ergodic_h_classes(&h);
    let needed = classes
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    match needed {
        Some(n) if n <= bound => {}
        _ => {
            return Err(Error::BoundExceeded {
                what: "admissible_frontiers",
                needed: needed.map_or(u128::MAX, |n| n as u128),
                bound: bound as u128,
            })
        }
    }
    let mut out = vec![Vec::new()];
    for class in &classes {
        out = out
            .into_iter()
            .flat_map(|f: Vec<usize>| {
                class.iter().map(move |&c| {
                    let mut f2 = f.clone();
                    f2.push(c);
                    f2
                })
            })
            .collect();
    }
    for f in &mut out {
        f.sort_unstable();
    }
    Ok(out)
}

/// `B_S`: the frontier states with their ᾱ-transitions; where a state has no
/// ᾱ σ-transition it gets α σ-transitions to every frontier state that is
/// `∼` to one of its α σ-successors in `a`.
pub fn build_frontier_automaton(a: &Automaton, plan: &FrontierPlan, rel: &EquivRelations) -> Automaton {
    let states = plan.states();
    let mut keep = vec![false; a.num_states()];
    for &s in &states {
        keep[s] = true;
    }
    let mut ts = Vec::new();
    for &q in &states {
        for l in a.letters() {
            let safe: Vec<State> = a.safe_succ(q, l).collect();
            if !safe.is_empty() {
                ts.extend(safe.into_iter().map(|d| Transition::safe(q, l, d)));
                continue;
            }
            for &s in &states {
                if a.alpha_succ(q, l).any(|d| rel.equiv(s, d)) {
                    ts.push(Transition::alpha(q, l, s));
                }
            }
        }
    }
    let base = Automaton::from_parts(a.alphabet().clone(), a.num_states(), plan.chosen_initial, ts);
    let (mut b, _) = base.restrict(&keep, plan.chosen_initial);
    if let Some(n) = a.name() {
        b = b.with_name(n);
    }
    b
}

/// `≈`-classes of one automaton, numbered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMap {
    pub class_of: Vec<usize>,
    pub representative: Vec<State>,
}

impl QuotientMap {
    pub fn new(rel: &EquivRelations) -> Self {
        let class_of = rel.strong_classes();
        let classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut representative = vec![usize::MAX; classes];
        for (q, &c) in class_of.iter().enumerate() {
            if representative[c] == usize::MAX {
                representative[c] = q;
            }
        }
        QuotientMap {
            class_of,
            representative,
        }
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }
}

/// `C`: states are `≈`-classes; `⟨[q], σ, [p]⟩` is present iff some members
/// have the transition, with its mark.
pub fn quotient(b: &Automaton, rel: &EquivRelations) -> Result<(Automaton, QuotientMap)> {
    if !is_alpha_homogeneous(b) {
        return Err(Error::NotNice(NiceProperty::AlphaHomogeneous));
    }
    let map = QuotientMap::new(rel);
    let mut cells: BTreeMap<(State, usize, State), Transition> = BTreeMap::new();
    for t in b.transitions() {
        let (src, dst) = (map.class_of[t.src], map.class_of[t.dst]);
        let nt = Transition::new(src, t.letter, dst, t.mark);
        cells
            .entry((src, t.letter, dst))
            .and_modify(|old| {
                if nt.mark < old.mark {
                    *old = nt
                }
            })
            .or_insert(nt);
    }
    let mut c = Automaton::from_parts(
        b.alphabet().clone(),
        map.len(),
        map.class_of[b.initial()],
        cells.into_values(),
    );
    if let Some(n) = b.name() {
        c = c.with_name(n);
    }
    Ok((c, map))
}

/// Every pair `q ≾ s` lies in one safe component.
pub fn is_safe_centralized(a: &Automaton, rel: &EquivRelations) -> bool {
    let dec = safe_components(a);
    a.states()
        .all(|q| a.states().all(|s| !rel.subsafe(q, s) || dec.same_component(q, s)))
}

/// No two distinct states are `≈`.
pub fn is_safe_minimal(a: &Automaton, rel: &EquivRelations) -> bool {
    a.states()
        .all(|q| (q + 1..a.num_states()).all(|s| !rel.strongly_equiv(q, s)))
}

/// Intermediate results of one run of the pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct MinimizeTrace {
    pub nice_states: usize,
    pub plan: FrontierPlan,
    /// Original state of each state of `B_S`.
    pub frontier_states: Vec<State>,
    pub quotient: QuotientMap,
}

fn run_pipeline(nice: &Automaton, rel: &EquivRelations, plan: FrontierPlan) -> Result<(Automaton, MinimizeTrace)> {
    let b = build_frontier_automaton(nice, &plan, rel);
    let rel_b = compute_relations(&b);
    let (c, q) = quotient(&b, &rel_b)?;
    Ok((
        c,
        MinimizeTrace {
            nice_states: nice.num_states(),
            frontier_states: plan.states(),
            plan,
            quotient: q,
        },
    ))
}

pub fn minimize(a: &Automaton) -> Result<Automaton> {
    Ok(minimize_traced(a)?.0)
}

pub fn minimize_traced(a: &Automaton) -> Result<(Automaton, MinimizeTrace)> {
    let nice = niceify(a)?;
    let rel = compute_relations(&nice);
    let plan = choose_frontier(&nice, &rel);
    run_pipeline(&nice, &rel, plan)
}

/// Runs the pipeline once per admissible frontier, in enumeration order.
pub fn minimize_all_frontiers(a: &Automaton, bound: usize) -> Result<Vec<Automaton>> {
    let nice = niceify(a)?;
    let rel = compute_relations(&nice);
    admissible_frontiers(&nice, &rel, bound)?
        .into_iter()
        .map(|f| Ok(run_pipeline(&nice, &rel, plan_for_frontier(&nice, &rel, f))?.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::fixtures;
    use crate::random::corpus_instance;
    use crate::semantics::language_equiv;
    use crate::structure::{all_reachable, is_normal};

    #[test]
    fn fig2_plan() {
        let a = fixtures::fig2();
        let rel = compute_relations(&a);
        let plan = choose_frontier(&a, &rel);
        let c01 = plan.components.component_of[0];
        let c2 = plan.components.component_of[2];
        assert_eq!(plan.components.component_of[1], c01);
        assert!(plan.h[c2][c01]);
        assert!(!plan.h[c01][c2]);
        assert_eq!(plan.frontier, vec![c01]);
        assert_eq!(plan.states(), vec![0, 1]);
        assert_eq!(plan.chosen_initial, 0);
        assert!(!is_safe_centralized(&a, &rel));
        assert!(is_safe_minimal(&a, &rel));
    }

    #[test]
    fn fig2_frontier_automaton_is_fig4() {
        let a = fixtures::fig2();
        let rel = compute_relations(&a);
        let b = build_frontier_automaton(&a, &choose_frontier(&a, &rel), &rel);
        assert_eq!(b, fixtures::fig4());
        assert!(is_alpha_homogeneous(&b));
        let (c, map) = quotient(&b, &compute_relations(&b)).unwrap();
        assert_eq!(c, b);
        assert_eq!(map.class_of, vec![0, 1]);
    }

    #[test]
    fn fig2_minimizes_to_fig4() {
        let (c, trace) = minimize_traced(&fixtures::fig2()).unwrap();
        assert_eq!(c, fixtures::fig4());
        assert_eq!(trace.frontier_states, vec![0, 1]);
        let rel = compute_relations(&c);
        assert!(is_safe_centralized(&c, &rel) && is_safe_minimal(&c, &rel));
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let sigma = Alphabet::with_size(2).unwrap();
        let a = Automaton::new(
            sigma,
            2,
            0,
            [
                Transition::safe(0, 0, 0),
                Transition::alpha(0, 1, 0),
                Transition::safe(1, 0, 0),
                Transition::safe(1, 1, 1),
            ],
        )
        .unwrap();
        let n = niceify(&a).unwrap();
        assert_eq!(n.num_states(), 1);
        assert!(language_equiv(&a, &n).unwrap());
    }

    #[test]
    fn duplicated_state_is_merged() {
        // two copies of the universal state
        let sigma = Alphabet::with_size(1).unwrap();
        let a = Automaton::new(
            sigma,
            2,
            0,
            [Transition::safe(0, 0, 1), Transition::safe(1, 0, 0)],
        )
        .unwrap();
        let rel = compute_relations(&a);
        assert!(!is_safe_minimal(&a, &rel));
        let (c, _) = quotient(&a, &rel).unwrap();
        assert_eq!(c.num_states(), 1);
        assert_eq!(minimize(&a).unwrap().num_states(), 1);
    }

    #[test]
    fn quotient_rejects_inhomogeneous_input() {
        let a = fixtures::fig5c1();
        let mixed = Automaton::from_parts(
            a.alphabet().clone(),
            2,
            0,
            a.transitions()
                .iter()
                .copied()
                .chain([Transition::alpha(0, 0, 1)]),
        );
        let rel = compute_relations(&mixed);
        assert!(matches!(
            quotient(&mixed, &rel),
            Err(Error::NotNice(NiceProperty::AlphaHomogeneous))
        ));
    }

    #[test]
    fn non_gfg_input_is_rejected() {
        let a = crate::oracle::non_gfg_union();
        assert!(matches!(niceify(&a), Err(Error::NotNice(_))));
    }

    #[test]
    fn nice_nondeterministic_input_is_accepted() {
        for a in [fixtures::fig4(), fixtures::fig5c1(), fixtures::fig7()] {
            let m = minimize(&a).unwrap();
            assert_eq!(m.num_states(), 2);
            assert!(language_equiv(&m, &a).unwrap());
        }
    }

    #[test]
    fn corpus_pipeline_properties() {
        for seed in 1..=60 {
            let a = corpus_instance(seed);
            let nice = niceify(&a).unwrap();
            assert!(all_reachable(&nice) && is_normal(&nice));
            let m = minimize(&a).unwrap();
            assert!(m.validate().is_empty(), "seed {seed}");
            assert!(m.num_states() <= a.num_states());
            assert!(language_equiv(&a, &m).unwrap(), "seed {seed}");
            let rel = compute_relations(&m);
            assert!(is_safe_centralized(&m, &rel), "seed {seed}");
            assert!(is_safe_minimal(&m, &rel), "seed {seed}");
            assert!(is_alpha_homogeneous(&m));
            assert!(all_reachable(&m), "seed {seed}");
        }
    }

    #[test]
    fn h_is_transitive_and_frontier_is_an_antichain() {
        for seed in 1..=60 {
            let a = niceify(&corpus_instance(seed)).unwrap();
            let rel = compute_relations(&a);
            let plan = choose_frontier(&a, &rel);
            let m = plan.h.len();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        if plan.h[i][j] && plan.h[j][k] {
                            assert!(plan.h[i][k]);
                        }
                    }
                }
            }
            for &x in &plan.frontier {
                for &y in &plan.frontier {
                    assert!(x == y || !plan.h[x][y]);
                }
            }
            for i in 0..m {
                assert!(plan.frontier.iter().any(|&f| plan.h[i][f]));
            }
        }
    }
}
