//! Hand-transcribed example automata.
//!
//! | name     | alphabet | states | description                                        |
//! |----------|----------|--------|----------------------------------------------------|
//! | `fig1a`  | a b      | 3      | tDCW for `(a+b)*·(a^ω + b^ω)`                      |
//! | `fig1b`  | a b      | 3      | a second, non-isomorphic tDCW for the same language |
//! | `fig2`   | a b c    | 3      | nice tDCW that is safe-minimal, not safe-centralized |
//! | `fig4`   | a b c    | 2      | frontier automaton of `fig2`                        |
//! | `fig5c1` | a b c    | 2      | `fig4` without `⟨q0, c, q0⟩`                        |
//! | `fig5c2` | a b c    | 2      | `fig4` without `⟨q0, c, q1⟩`                        |
//! | `fig6d1` | b c      | 2      | tDCW for `(b+c)*·(bc)^ω`                           |
//! | `fig6d2` | b c      | 2      | a second, non-isomorphic tDCW for the same language |
//! | `fig7`   | a b c    | 2      | α-maximal form of `fig4`                            |

use crate::automaton::{Alphabet, Automaton, Transition};
use crate::error::{Error, Result};

pub const NAMES: [&str; 9] = [
    "fig1a", "fig1b", "fig2", "fig4", "fig5c1", "fig5c2", "fig6d1", "fig6d2", "fig7",
];

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn build(name: &str, letters: &[&str], n: usize, ts: Vec<Transition>) -> Automaton {
    let sigma = Alphabet::new(letters.iter().copied()).expect("fixture alphabet");
    Automaton::new(sigma, n, 0, ts)
        .expect("fixture must be valid")
        .with_name(name)
}

/// Looks a fixture up by name.
pub fn fixture(name: &str) -> Result<Automaton> {
    Ok(match name {
        "fig1a" => fig1a(),
        "fig1b" => fig1b(),
        "fig2" => fig2(),
        "fig4" => fig4(),
        "fig5c1" => fig5c1(),
        "fig5c2" => fig5c2(),
        "fig6d1" => fig6d1(),
        "fig6d2" => fig6d2(),
        "fig7" => fig7(),
        other => return Err(Error::Bound(format!("unknown fixture {other:?}"))),
    })
}

pub fn all() -> Vec<Automaton> {
    NAMES.iter().map(|n| fixture(n).unwrap()).collect()
}

/// Three-state DCW waiting for an `a` and then a `b`; completing the pair
/// visits the accepting state. State-based marks are moved onto the
/// transitions leaving that state.
pub fn fig1a() -> Automaton {
    use Transition as T;
    build(
        "fig1a",
        &["a", "b"],
        3,
        vec![
            T::safe(0, A, 1),
            T::safe(0, B, 0),
            T::safe(1, A, 1),
            T::safe(1, B, 2),
            T::alpha(2, A, 1),
            T::alpha(2, B, 0),
        ],
    )
}

/// `fig1a` with the roles of the two letters exchanged.
pub fn fig1b() -> Automaton {
    use Transition as T;
    build(
        "fig1b",
        &["a", "b"],
        3,
        vec![
            T::safe(0, B, 1),
            T::safe(0, A, 0),
            T::safe(1, B, 1),
            T::safe(1, A, 2),
            T::alpha(2, B, 1),
            T::alpha(2, A, 0),
        ],
    )
}

pub fn fig2() -> Automaton {
    use Transition as T;
    build(
        "fig2",
        &["a", "b", "c"],
        3,
        vec![
            T::safe(0, A, 0),
            T::safe(0, B, 1),
            T::alpha(0, C, 2),
            T::safe(1, A, 1),
            T::safe(1, C, 0),
            T::alpha(1, B, 2),
            T::safe(2, A, 2),
            T::alpha(2, B, 1),
            T::alpha(2, C, 0),
        ],
    )
}

fn fig4_transitions() -> Vec<Transition> {
    use Transition as T;
    vec![
        T::safe(0, A, 0),
        T::safe(0, B, 1),
        T::alpha(0, C, 0),
        T::alpha(0, C, 1),
        T::safe(1, A, 1),
        T::safe(1, C, 0),
        T::alpha(1, B, 0),
        T::alpha(1, B, 1),
    ]
}

pub fn fig4() -> Automaton {
    build("fig4", &["a", "b", "c"], 2, fig4_transitions())
}

pub fn fig5c1() -> Automaton {
    let ts = fig4_transitions()
        .into_iter()
        .filter(|t| *t != Transition::alpha(0, C, 0))
        .collect();
    build("fig5c1", &["a", "b", "c"], 2, ts)
}

pub fn fig5c2() -> Automaton {
    let ts = fig4_transitions()
        .into_iter()
        .filter(|t| *t != Transition::alpha(0, C, 1))
        .collect();
    build("fig5c2", &["a", "b", "c"], 2, ts)
}

// over {b, c}: letter 0 is b, letter 1 is c
pub fn fig6d1() -> Automaton {
    use Transition as T;
    build(
        "fig6d1",
        &["b", "c"],
        2,
        vec![T::safe(0, 0, 1), T::alpha(0, 1, 0), T::safe(1, 1, 0), T::alpha(1, 0, 1)],
    )
}

pub fn fig6d2() -> Automaton {
    use Transition as T;
    build(
        "fig6d2",
        &["b", "c"],
        2,
        vec![T::safe(0, 0, 1), T::alpha(0, 1, 0), T::safe(1, 1, 0), T::alpha(1, 0, 0)],
    )
}

pub fn fig7() -> Automaton {
    let safe = [(0, A, 0), (0, B, 1), (1, A, 1), (1, C, 0)];
    let mut ts = Vec::new();
    for q in 0..2 {
        for l in [A, B, C] {
            for s in 0..2 {
                if safe.contains(&(q, l, s)) {
                    ts.push(Transition::safe(q, l, s));
                } else {
                    ts.push(Transition::alpha(q, l, s));
                }
            }
        }
    }
    build("fig7", &["a", "b", "c"], 2, ts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_validates() {
        for a in all() {
            assert!(a.validate().is_empty(), "{:?}", a.name());
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(fig2().num_states(), 3);
        assert_eq!(fig4().num_states(), 2);
        assert_eq!(fig7().transitions().len(), 12);
        assert!(fig2().is_deterministic());
        assert!(fig6d1().is_deterministic() && fig6d2().is_deterministic());
        assert!(!fig4().is_deterministic());
    }

    #[test]
    fn unknown_name() {
        assert!(fixture("fig3").is_err());
    }
}
