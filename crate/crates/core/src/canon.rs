//! Canonical forms by α-saturation.
//!
//! A triple `(q, σ, s)` is allowed when some σ-successor of `q` is `∼` to
//! `s`. Adding allowed triples as α-transitions changes neither the language
//! nor the safe language of any state.

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, Letter, State, Transition};
use crate::error::{Error, NiceProperty, Result};
use crate::minimize::minimize;
use crate::semantics::{compute_relations, EquivRelations};
use crate::structure::{all_reachable, is_alpha_homogeneous, is_normal, is_safe_deterministic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// α-maximal: every allowed triple is a transition.
    Max,
    /// α-maximal up to homogeneity: allowed triples are added only where no
    /// ᾱ-transition exists.
    Homogeneous,
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Flavor::Max),
            "homogeneous" => Ok(Flavor::Homogeneous),
            other => Err(Error::Bound(format!("unknown canonization mode {other:?}"))),
        }
    }
}

pub fn allowed(a: &Automaton, rel: &EquivRelations, q: State, letter: Letter, s: State) -> bool {
    a.succ(q, letter).iter().any(|&(d, _)| rel.equiv(s, d))
}

fn check_nice(a: &Automaton, rel: &EquivRelations) -> Result<()> {
    if !all_reachable(a) {
        return Err(Error::NotNice(NiceProperty::Reachable));
    }
    if !is_normal(a) {
        return Err(Error::NotNice(NiceProperty::Normal));
    }
    if !is_safe_deterministic(a) {
        return Err(Error::NotNice(NiceProperty::SafeDeterministic));
    }
    if !crate::structure::is_semantically_deterministic(a, rel) {
        return Err(Error::NotNice(NiceProperty::SemanticallyDeterministic));
    }
    Ok(())
}

fn saturate(a: &Automaton, rel: &EquivRelations, only_unsafe_cells: bool) -> Automaton {
    let mut ts: Vec<Transition> = a.transitions().to_vec();
    for q in a.states() {
        for l in a.letters() {
            if only_unsafe_cells && a.safe_succ(q, l).next().is_some() {
                continue;
            }
            for s in a.states() {
                if !a.has_transition(q, l, s) && allowed(a, rel, q, l, s) {
                    ts.push(Transition::alpha(q, l, s));
                }
            }
        }
    }
    let mut out = Automaton::from_parts(a.alphabet().clone(), a.num_states(), a.initial(), ts);
    if let Some(n) = a.name() {
        out = out.with_name(n);
    }
    out
}

/// `A_Ê`: adds every allowed triple not yet present as an α-transition.
pub fn saturate_max(a: &Automaton, rel: &EquivRelations) -> Result<Automaton> {
    check_nice(a, rel)?;
    Ok(saturate(a, rel, false))
}

/// Adds allowed triples as α-transitions for the `(q, σ)` without an
/// ᾱ σ-transition.
pub fn saturate_homogeneous(a: &Automaton, rel: &EquivRelations) -> Result<Automaton> {
    check_nice(a, rel)?;
    if !is_alpha_homogeneous(a) {
        return Err(Error::NotNice(NiceProperty::AlphaHomogeneous));
    }
    Ok(saturate(a, rel, true))
}

/// Minimizes, then saturates according to `flavor`.
pub fn canonical_form(a: &Automaton, flavor: Flavor) -> Result<Automaton> {
    let c = minimize(a)?;
    let rel = compute_relations(&c);
    match flavor {
        Flavor::Max => saturate_max(&c, &rel),
        Flavor::Homogeneous => saturate_homogeneous(&c, &rel),
    }
}

pub fn is_alpha_maximal(a: &Automaton, rel: &EquivRelations) -> bool {
    a.states().all(|q| {
        a.letters()
            .all(|l| a.states().all(|s| !allowed(a, rel, q, l, s) || a.has_transition(q, l, s)))
    })
}

pub fn is_alpha_maximal_up_to_homogeneity(a: &Automaton, rel: &EquivRelations) -> bool {
    is_alpha_homogeneous(a)
        && a.states().all(|q| {
            a.letters().all(|l| {
                a.safe_succ(q, l).next().is_some()
                    || a.states()
                        .all(|s| !allowed(a, rel, q, l, s) || a.has_transition(q, l, s))
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::isomorphic;
    use crate::random::corpus_instance;
    use crate::semantics::language_equiv;

    fn rel(a: &Automaton) -> EquivRelations {
        compute_relations(a)
    }

    #[test]
    fn existing_transitions_are_allowed() {
        for a in fixtures::all() {
            let r = rel(&a);
            for t in a.transitions() {
                assert!(allowed(&a, &r, t.src, t.letter, t.dst));
            }
        }
    }

    #[test]
    fn fig5c1_missing_transition_is_allowed() {
        let a = fixtures::fig5c1();
        let r = rel(&a);
        assert!(!a.has_transition(0, 2, 0));
        assert!(allowed(&a, &r, 0, 2, 0));
        assert!(!is_alpha_maximal(&a, &r));
        assert!(!is_alpha_maximal_up_to_homogeneity(&a, &r));
        assert_eq!(saturate_homogeneous(&a, &r).unwrap(), fixtures::fig4());
    }

    #[test]
    fn fig4_saturates_to_fig7() {
        let a = fixtures::fig4();
        let m = saturate_max(&a, &rel(&a)).unwrap();
        assert_eq!(m, fixtures::fig7());
        let r7 = rel(&m);
        assert!(is_alpha_maximal(&m, &r7));
        assert_eq!(saturate_max(&m, &r7).unwrap(), m);
        assert!(is_alpha_maximal_up_to_homogeneity(&a, &rel(&a)));
    }

    #[test]
    fn single_state_allows_everything() {
        let a = crate::random::random_tdcw(1, 3, 0.5, 4).unwrap();
        let r = rel(&a);
        for l in a.letters() {
            assert!(allowed(&a, &r, 0, l, 0));
        }
    }

    #[test]
    fn fig5_canonical_forms_are_isomorphic() {
        for flavor in [Flavor::Max, Flavor::Homogeneous] {
            let x = canonical_form(&fixtures::fig5c1(), flavor).unwrap();
            let y = canonical_form(&fixtures::fig5c2(), flavor).unwrap();
            assert!(isomorphic(&x, &y).unwrap().is_ok(), "{flavor:?}");
        }
    }

    #[test]
    fn non_nice_input_is_rejected() {
        let a = crate::oracle::non_gfg_union();
        assert!(saturate_max(&a, &rel(&a)).is_err());
    }

    #[test]
    fn corpus_saturation_laws() {
        for seed in 1..=40 {
            let c = minimize(&corpus_instance(seed)).unwrap();
            let r = rel(&c);
            assert!(is_alpha_maximal_up_to_homogeneity(&c, &r), "seed {seed}");
            let h = saturate_homogeneous(&c, &r).unwrap();
            assert_eq!(h, c, "seed {seed}");
            let m = saturate_max(&c, &r).unwrap();
            assert!(language_equiv(&m, &c).unwrap());
            assert_eq!(saturate_max(&m, &rel(&m)).unwrap(), m);
            assert_eq!(saturate_max(&h, &rel(&h)).unwrap(), m);
            let safe = |x: &Automaton| -> Vec<Transition> {
                x.transitions().iter().copied().filter(|t| !t.mark.is_alpha()).collect()
            };
            assert_eq!(safe(&m), safe(&c));
        }
    }

    #[test]
    fn flavor_parses() {
        assert_eq!("max".parse::<Flavor>().unwrap(), Flavor::Max);
        assert_eq!("homogeneous".parse::<Flavor>().unwrap(), Flavor::Homogeneous);
        assert!("other".parse::<Flavor>().is_err());
    }
}
