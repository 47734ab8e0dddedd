//! Isomorphism and safe isomorphism with checked witnesses.

use serde::Serialize;

use crate::automaton::{Automaton, Mark, State};
use crate::error::{Error, Result};
use crate::semantics::compute_relations_cross;
use crate::structure::safe_components;

/// A bijection `κ` from the states of one automaton to those of another.
///
/// The flags are always recomputed from the transition tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub map: Vec<State>,
    pub respects_nonalpha: bool,
    pub respects_alpha: bool,
    pub preserves_initial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Refusal {
    SizeMismatch { left: usize, right: usize },
    ComponentProfileMismatch { left: Vec<usize>, right: Vec<usize> },
    SearchExhausted,
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refusal::SizeMismatch { left, right } => {
                write!(f, "state counts differ ({left} vs {right})")
            }
            Refusal::ComponentProfileMismatch { left, right } => {
                write!(f, "safe component sizes differ ({left:?} vs {right:?})")
            }
            Refusal::SearchExhausted => f.write_str("no bijection respects the transitions"),
        }
    }
}

fn mark_table(a: &Automaton) -> Vec<Option<Mark>> {
    let (n, k) = (a.num_states(), a.num_letters());
    let mut t = vec![None; n * k * n];
    for tr in a.transitions() {
        t[(tr.src * k + tr.letter) * n + tr.dst] = Some(tr.mark);
    }
    t
}

fn is_bijection(map: &[State], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n
        && map.iter().all(|&s| s < n && !std::mem::replace(&mut seen[s], true))
}

impl IsoWitness {
    /// Checks `map` against both automata and records which tables it respects.
    pub fn verify(a: &Automaton, b: &Automaton, map: Vec<State>) -> Option<IsoWitness> {
        let n = a.num_states();
        if a.alphabet() != b.alphabet() || b.num_states() != n || !is_bijection(&map, n) {
            return None;
        }
        let (ta, tb) = (mark_table(a), mark_table(b));
        let k = a.num_letters();
        let mut nonalpha = true;
        let mut alpha = true;
        for q in 0..n {
            for l in 0..k {
                for s in 0..n {
                    let x = ta[(q * k + l) * n + s];
                    let y = tb[(map[q] * k + l) * n + map[s]];
                    nonalpha &= (x == Some(Mark::NonAlpha)) == (y == Some(Mark::NonAlpha));
                    alpha &= (x == Some(Mark::Alpha)) == (y == Some(Mark::Alpha));
                }
            }
        }
        Some(IsoWitness {
            preserves_initial: map[a.initial()] == b.initial(),
            map,
            respects_nonalpha: nonalpha,
            respects_alpha: alpha,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.respects_nonalpha && self.respects_alpha
    }

    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0; self.map.len()];
        for (q, &s) in self.map.iter().enumerate() {
            inv[s] = q;
        }
        IsoWitness {
            map: inv,
            ..self.clone()
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &IsoWitness) -> IsoWitness {
        IsoWitness {
            map: self.map.iter().map(|&s| other.map[s]).collect(),
            respects_nonalpha: self.respects_nonalpha && other.respects_nonalpha,
            respects_alpha: self.respects_alpha && other.respects_alpha,
            preserves_initial: self.preserves_initial && other.preserves_initial,
        }
    }
}

fn component_profile(a: &Automaton) -> Vec<usize> {
    let mut sizes = safe_components(a).sizes();
    sizes.sort_unstable();
    sizes
}

/// Per-state invariants a structure-respecting bijection must preserve.
fn signature(a: &Automaton, q: State, with_alpha: bool) -> Vec<usize> {
    let dec = safe_components(a);
    let mut sig = vec![dec.components[dec.component_of[q]].len()];
    for l in a.letters() {
        sig.push(a.safe_succ(q, l).count());
        sig.push(usize::from(a.mark_of(q, l, q) == Some(Mark::NonAlpha)));
        if with_alpha {
            sig.push(a.alpha_succ(q, l).count());
            sig.push(usize::from(a.mark_of(q, l, q) == Some(Mark::Alpha)));
        }
    }
    sig
}

fn wanted(w: &IsoWitness, with_alpha: bool) -> bool {
    w.respects_nonalpha && (!with_alpha || w.respects_alpha)
}

struct Search<'a> {
    n: usize,
    k: usize,
    ta: Vec<Option<Mark>>,
    tb: Vec<Option<Mark>>,
    cands: Vec<Vec<State>>,
    with_alpha: bool,
    a: &'a Automaton,
    b: &'a Automaton,
}

impl Search<'_> {
    fn compatible(&self, x: Option<Mark>, y: Option<Mark>) -> bool {
        if self.with_alpha {
            x == y
        } else {
            (x == Some(Mark::NonAlpha)) == (y == Some(Mark::NonAlpha))
        }
    }

    fn fits(&self, map: &[Option<State>], q: State, s: State) -> bool {
        let (n, k) = (self.n, self.k);
        for (p, &mp) in map.iter().enumerate() {
            let t = if p == q { Some(s) } else { mp };
            let Some(t) = t else { continue };
            for l in 0..k {
                if !self.compatible(self.ta[(q * k + l) * n + p], self.tb[(s * k + l) * n + t])
                    || !self.compatible(self.ta[(p * k + l) * n + q], self.tb[(t * k + l) * n + s])
                {
                    return false;
                }
            }
        }
        true
    }

    fn run(&self, q: usize, map: &mut Vec<Option<State>>, used: &mut [bool]) -> Option<IsoWitness> {
        if q == self.n {
            let full: Vec<State> = map.iter().map(|s| s.expect("complete")).collect();
            let w = IsoWitness::verify(self.a, self.b, full)?;
            return wanted(&w, self.with_alpha).then_some(w);
        }
        for &s in &self.cands[q] {
            if used[s] || !self.fits(map, q, s) {
                continue;
            }
            map[q] = Some(s);
            used[s] = true;
            if let Some(w) = self.run(q + 1, map, used) {
                return Some(w);
            }
            map[q] = None;
            used[s] = false;
        }
        None
    }
}

fn search(a: &Automaton, b: &Automaton, with_alpha: bool) -> Result<std::result::Result<IsoWitness, Refusal>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (n, m) = (a.num_states(), b.num_states());
    if n != m {
        return Ok(Err(Refusal::SizeMismatch { left: n, right: m }));
    }
    let (pa, pb) = (component_profile(a), component_profile(b));
    if pa != pb {
        return Ok(Err(Refusal::ComponentProfileMismatch {
            left: pa,
            right: pb,
        }));
    }

    // ≈ pins the bijection on safe-minimal automata
    let (rel, off) = compute_relations_cross(a, b)?;
    let partners: Vec<Vec<State>> = a
        .states()
        .map(|q| b.states().filter(|&s| rel.strongly_equiv(q, off + s)).collect())
        .collect();
    if partners.iter().all(|p| p.len() == 1) {
        let map: Vec<State> = partners.iter().map(|p| p[0]).collect();
        if let Some(w) = IsoWitness::verify(a, b, map) {
            if wanted(&w, with_alpha) {
                return Ok(Ok(w));
            }
        }
    }

    let sig_b: Vec<Vec<usize>> = b.states().map(|s| signature(b, s, with_alpha)).collect();
    let cands: Vec<Vec<State>> = a
        .states()
        .map(|q| {
            let sq = signature(a, q, with_alpha);
            b.states().filter(|&s| sig_b[s] == sq).collect()
        })
        .collect();
    let s = Search {
        n,
        k: a.num_letters(),
        ta: mark_table(a),
        tb: mark_table(b),
        cands,
        with_alpha,
        a,
        b,
    };
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    Ok(s.run(0, &mut map, &mut used).ok_or(Refusal::SearchExhausted))
}

/// A bijection respecting the ᾱ-transitions, if one exists.
pub fn safe_isomorphic(a: &Automaton, b: &Automaton) -> Result<std::result::Result<IsoWitness, Refusal>> {
    search(a, b, false)
}

/// A bijection respecting both the ᾱ- and the α-transitions, if one exists.
pub fn isomorphic(a: &Automaton, b: &Automaton) -> Result<std::result::Result<IsoWitness, Refusal>> {
    search(a, b, true)
}
