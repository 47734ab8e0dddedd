//! The automaton data model: alphabets, marked transitions, lasso words and
//! structural validation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense state index.
pub type State = usize;
/// Dense letter index into an [`Alphabet`].
pub type Letter = usize;

/// Acceptance mark of a transition. `NonAlpha` sorts before `Alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mark {
    /// A safe transition (not in α).
    NonAlpha,
    /// An α-transition; a run is rejecting iff it takes these infinitely often.
    Alpha,
}

impl Mark {
    pub fn is_alpha(self) -> bool {
        matches!(self, Mark::Alpha)
    }
}

/// An ordered, duplicate-free list of letter names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet, rejecting empty or duplicated letter lists.
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for l in &letters {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    /// The alphabet `{a, b, c, ...}` with `n` letters (more than 26 get numbered names).
    pub fn with_size(n: usize) -> Result<Self> {
        Alphabet::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("l{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }
}

/// One element of the transition relation, carrying its mark.
///
/// Field order gives the canonical sort: source, letter, mark (ᾱ first), target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub src: State,
    pub letter: Letter,
    pub mark: Mark,
    pub dst: State,
}

impl Transition {
    pub fn new(src: State, letter: Letter, dst: State, mark: Mark) -> Self {
        Transition {
            src,
            letter,
            mark,
            dst,
        }
    }

    pub fn safe(src: State, letter: Letter, dst: State) -> Self {
        Transition::new(src, letter, dst, Mark::NonAlpha)
    }

    pub fn alpha(src: State, letter: Letter, dst: State) -> Self {
        Transition::new(src, letter, dst, Mark::Alpha)
    }
}

/// A structural defect reported by [`Automaton::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    InitialOutOfRange { initial: State },
    StateOutOfRange { transition: Transition },
    LetterOutOfRange { transition: Transition },
    DuplicateTransition { transition: Transition },
    ConflictingMarks { src: State, letter: Letter, dst: State },
    MissingSuccessor { state: State, letter: Letter },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InitialOutOfRange { initial } => {
                write!(f, "initial state {initial} is out of range")
            }
            Violation::StateOutOfRange { transition: t } => write!(
                f,
                "transition ({}, {}, {}) refers to a state out of range",
                t.src, t.letter, t.dst
            ),
            Violation::LetterOutOfRange { transition: t } => write!(
                f,
                "transition ({}, {}, {}) uses letter index {} outside the alphabet",
                t.src, t.letter, t.dst, t.letter
            ),
            Violation::DuplicateTransition { transition: t } => write!(
                f,
                "duplicate transition ({}, {}, {})",
                t.src, t.letter, t.dst
            ),
            Violation::ConflictingMarks { src, letter, dst } => write!(
                f,
                "transition ({src}, {letter}, {dst}) is both an alpha and a non-alpha transition"
            ),
            Violation::MissingSuccessor { state, letter } => {
                write!(f, "missing successor for state {state} on letter {letter}")
            }
        }
    }
}

/// A transition-based co-Büchi automaton.
///
/// Values are immutable once built. Transitions are kept sorted in canonical
/// order and indexed per `(state, letter)` for successor queries.
#[derive(Clone, Debug)]
pub struct Automaton {
    alphabet: Alphabet,
    num_states: usize,
    initial: State,
    transitions: Vec<Transition>,
    name: Option<String>,
    // successors of (q, σ) at q * |Σ| + σ, sorted ᾱ first then by target
    succ: Vec<Vec<(State, Mark)>>,
}

impl PartialEq for Automaton {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.num_states == other.num_states
            && self.initial == other.initial
            && self.transitions == other.transitions
    }
}

impl Eq for Automaton {}

impl Automaton {
    /// Assembles an automaton without checking totality or ranges; call
    /// [`Automaton::validate`] or use [`Automaton::new`] for a checked value.
    pub fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        initial: State,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Self {
        let mut transitions: Vec<Transition> = transitions.into_iter().collect();
        transitions.sort();
        let k = alphabet.len();
        let mut succ = vec![Vec::new(); num_states * k];
        for t in &transitions {
            if t.src < num_states && t.dst < num_states && t.letter < k {
                let cell: &mut Vec<(State, Mark)> = &mut succ[t.src * k + t.letter];
                if !cell.contains(&(t.dst, t.mark)) {
                    cell.push((t.dst, t.mark));
                }
            }
        }
        for cell in &mut succ {
            cell.sort_by_key(|&(d, m)| (m, d));
        }
        Automaton {
            alphabet,
            num_states,
            initial,
            transitions,
            name: None,
            succ,
        }
    }

    /// Builds an automaton and rejects it unless [`Automaton::validate`] is empty.
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        initial: State,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self> {
        let a = Automaton::from_parts(alphabet, num_states, initial, transitions);
        a.ensure_valid()?;
        Ok(a)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn without_name(mut self) -> Self {
        self.name = None;
        self
    }

    /// The same automaton re-rooted at `q`.
    pub fn with_initial(&self, q: State) -> Self {
        let mut a = self.clone();
        a.initial = q;
        a
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn states(&self) -> std::ops::Range<State> {
        0..self.num_states
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.alphabet.len()
    }

    /// All `σ`-successors of `q`, ᾱ-successors first.
    pub fn succ(&self, q: State, letter: Letter) -> &[(State, Mark)] {
        &self.succ[q * self.alphabet.len() + letter]
    }

    pub fn safe_succ(&self, q: State, letter: Letter) -> impl Iterator<Item = State> + '_ {
        self.succ(q, letter)
            .iter()
            .filter(|(_, m)| !m.is_alpha())
            .map(|&(d, _)| d)
    }

    pub fn alpha_succ(&self, q: State, letter: Letter) -> impl Iterator<Item = State> + '_ {
        self.succ(q, letter)
            .iter()
            .filter(|(_, m)| m.is_alpha())
            .map(|&(d, _)| d)
    }

    /// The mark of `⟨q, σ, s⟩`, if it is a transition.
    pub fn mark_of(&self, q: State, letter: Letter, s: State) -> Option<Mark> {
        self.succ(q, letter)
            .iter()
            .find(|&&(d, _)| d == s)
            .map(|&(_, m)| m)
    }

    pub fn has_transition(&self, q: State, letter: Letter, s: State) -> bool {
        self.mark_of(q, letter, s).is_some()
    }

    /// Exactly one successor per state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().all(|c| c.len() == 1)
    }

    /// The unique successor of a deterministic automaton.
    pub fn det_step(&self, q: State, letter: Letter) -> (State, Mark) {
        self.succ(q, letter)[0]
    }

    /// Lists every violated structural invariant; empty iff the automaton is
    /// well formed and total.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.alphabet.len();
        if self.initial >= self.num_states {
            out.push(Violation::InitialOutOfRange {
                initial: self.initial,
            });
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if t.src >= self.num_states || t.dst >= self.num_states {
                out.push(Violation::StateOutOfRange { transition: *t });
            }
            if t.letter >= k {
                out.push(Violation::LetterOutOfRange { transition: *t });
            }
            if i > 0 && self.transitions[i - 1] == *t {
                out.push(Violation::DuplicateTransition { transition: *t });
            }
        }
        for q in self.states() {
            for l in self.letters() {
                let cell = self.succ(q, l);
                if cell.is_empty() {
                    out.push(Violation::MissingSuccessor {
                        state: q,
                        letter: l,
                    });
                }
                for (i, &(d, _)) in cell.iter().enumerate() {
                    if cell[..i].iter().any(|&(e, _)| e == d) {
                        out.push(Violation::ConflictingMarks {
                            src: q,
                            letter: l,
                            dst: d,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Renames states by `perm[old] = new`. `perm` must be a permutation.
    pub fn permute(&self, perm: &[State]) -> Automaton {
        assert_eq!(perm.len(), self.num_states, "permutation has the wrong length");
        let ts = self
            .transitions
            .iter()
            .map(|t| Transition::new(perm[t.src], t.letter, perm[t.dst], t.mark));
        let mut a = Automaton::from_parts(
            self.alphabet.clone(),
            self.num_states,
            perm[self.initial],
            ts,
        );
        a.name = self.name.clone();
        a
    }

    /// Keeps the states in `keep` (renumbered in ascending order) and every
    /// transition between them. Returns the automaton and the old→new map.
    pub fn restrict(&self, keep: &[bool], initial: State) -> (Automaton, Vec<Option<State>>) {
        let mut map = vec![None; self.num_states];
        let mut n = 0;
        for q in self.states() {
            if keep[q] {
                map[q] = Some(n);
                n += 1;
            }
        }
        let ts = self.transitions.iter().filter_map(|t| {
            Some(Transition::new(map[t.src]?, t.letter, map[t.dst]?, t.mark))
        });
        let init = map[initial].expect("initial state must be kept");
        let mut a = Automaton::from_parts(self.alphabet.clone(), n, init, ts);
        a.name = self.name.clone();
        (a, map)
    }

    /// Breadth-first renumbering from the initial state, visiting letters and
    /// then targets in ascending order. Unreachable states keep their
    /// relative order after the reachable ones.
    pub fn canonical_numbering(&self) -> Vec<State> {
        let mut perm = vec![usize::MAX; self.num_states];
        let mut next = 0;
        let mut queue = VecDeque::new();
        perm[self.initial] = 0;
        next += 1;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for l in self.letters() {
                let mut targets: Vec<State> = self.succ(q, l).iter().map(|&(d, _)| d).collect();
                targets.sort_unstable();
                for d in targets {
                    if perm[d] == usize::MAX {
                        perm[d] = next;
                        next += 1;
                        queue.push_back(d);
                    }
                }
            }
        }
        for p in perm.iter_mut() {
            if *p == usize::MAX {
                *p = next;
                next += 1;
            }
        }
        perm
    }

    pub fn canonically_renumbered(&self) -> Automaton {
        self.permute(&self.canonical_numbering())
    }
}

/// Places `b` after `a`: states of `b` are shifted by the returned offset
/// (`|a|`). The union keeps `a`'s initial state and its name.
pub fn disjoint_union(a: &Automaton, b: &Automaton) -> Result<(Automaton, usize)> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let offset = a.num_states;
    let ts = a.transitions.iter().copied().chain(
        b.transitions
            .iter()
            .map(|t| Transition::new(t.src + offset, t.letter, t.dst + offset, t.mark)),
    );
    let mut u = Automaton::from_parts(a.alphabet.clone(), offset + b.num_states, a.initial, ts);
    u.name = a.name.clone();
    Ok((u, offset))
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LassoWord {
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    /// Parses `u` and `v` given as strings of single-character letter names.
    pub fn from_names(alphabet: &Alphabet, prefix: &str, period: &str) -> Result<Self> {
        let conv = |s: &str| -> Result<Vec<Letter>> {
            s.chars()
                .map(|c| {
                    alphabet
                        .index_of(&c.to_string())
                        .ok_or_else(|| Error::UnknownLetter(c.to_string()))
                })
                .collect()
        };
        LassoWord::new(conv(prefix)?, conv(period)?)
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Number of distinct positions in the lasso shape, `|u| + |v|`.
    pub fn shape_len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Letter read when leaving shape position `i`.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[i - self.prefix.len()]
        }
    }

    /// Position following `i` in the lasso shape.
    pub fn next_pos(&self, i: usize) -> usize {
        if i + 1 < self.shape_len() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.prefix.iter().chain(&self.period).copied().max()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LassoWord, &'a Alphabet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let word = |ls: &[Letter]| -> String {
                    ls.iter().map(|&l| self.1.name(l)).collect::<Vec<_>>().join("")
                };
                let u = word(&self.0.prefix);
                write!(
                    f,
                    "{}({})^w",
                    if u.is_empty() { "" } else { &u },
                    word(&self.0.period)
                )
            }
        }
        D(self, alphabet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universal(k: usize) -> Automaton {
        let sigma = Alphabet::with_size(k).unwrap();
        Automaton::new(sigma, 1, 0, (0..k).map(|l| Transition::safe(0, l, 0))).unwrap()
    }

    #[test]
    fn one_state_all_safe_is_valid() {
        assert!(universal(3).validate().is_empty());
    }

    #[test]
    fn missing_loop_is_reported() {
        let sigma = Alphabet::with_size(2).unwrap();
        let a = Automaton::from_parts(sigma, 1, 0, [Transition::safe(0, 0, 0)]);
        assert_eq!(
            a.validate(),
            vec![Violation::MissingSuccessor { state: 0, letter: 1 }]
        );
        assert!(matches!(a.ensure_valid(), Err(Error::Invalid(_))));
    }

    #[test]
    fn conflicting_marks_and_duplicates() {
        let sigma = Alphabet::with_size(1).unwrap();
        let a = Automaton::from_parts(
            sigma,
            1,
            0,
            [
                Transition::safe(0, 0, 0),
                Transition::alpha(0, 0, 0),
                Transition::safe(0, 0, 0),
            ],
        );
        let v = a.validate();
        assert!(v.contains(&Violation::ConflictingMarks { src: 0, letter: 0, dst: 0 }));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::DuplicateTransition { .. })));
    }

    #[test]
    fn out_of_range_entries() {
        let sigma = Alphabet::with_size(1).unwrap();
        let a = Automaton::from_parts(
            sigma,
            1,
            3,
            [Transition::safe(0, 0, 0), Transition::safe(0, 4, 2)],
        );
        let v = a.validate();
        assert!(v.contains(&Violation::InitialOutOfRange { initial: 3 }));
        assert!(v.iter().any(|x| matches!(x, Violation::StateOutOfRange { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::LetterOutOfRange { .. })));
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(matches!(Alphabet::new(["a", "a"]), Err(Error::DuplicateLetter(_))));
        assert!(matches!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet)));
    }

    #[test]
    fn union_with_itself_doubles() {
        let a = universal(2);
        let (u, off) = disjoint_union(&a, &a).unwrap();
        assert_eq!(off, 1);
        assert_eq!(u.num_states(), 2);
        assert!(u.validate().is_empty());
        assert!(u.has_transition(1, 1, 1));
        assert!(!u.has_transition(0, 0, 1));
    }

    #[test]
    fn union_rejects_alphabet_mismatch() {
        assert!(matches!(
            disjoint_union(&universal(2), &universal(3)),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn lasso_requires_period() {
        assert!(LassoWord::new(vec![0], vec![]).is_err());
        let w = LassoWord::new(vec![0, 1], vec![1]).unwrap();
        assert_eq!(w.shape_len(), 3);
        assert_eq!(w.next_pos(2), 2);
        assert_eq!(w.letter_at(1), 1);
    }

    #[test]
    fn canonical_numbering_is_bfs() {
        let sigma = Alphabet::with_size(1).unwrap();
        // 0 -> 2 -> 1 -> 0
        let a = Automaton::new(
            sigma,
            3,
            0,
            [
                Transition::safe(0, 0, 2),
                Transition::safe(2, 0, 1),
                Transition::alpha(1, 0, 0),
            ],
        )
        .unwrap();
        assert_eq!(a.canonical_numbering(), vec![0, 2, 1]);
        let c = a.canonically_renumbered();
        assert!(c.has_transition(0, 0, 1));
        assert_eq!(c.mark_of(2, 0, 0), Some(Mark::Alpha));
    }
}
