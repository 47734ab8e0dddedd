#![allow(dead_code)]

use gfgcanon::{Automaton, LassoWord, Mark, State};

/// Membership by greatest fixpoint: keep the positions of the lasso shape
/// that have a safe successor still kept, then look for one reachable from
/// the start. Shares no code with the library's SCC-based check.
pub fn naive_member(a: &Automaton, q: State, w: &LassoWord) -> bool {
    let len = w.prefix().len() + w.period().len();
    let letter = |i: usize| {
        if i < w.prefix().len() {
            w.prefix()[i]
        } else {
            w.period()[i - w.prefix().len()]
        }
    };
    let next = |i: usize| if i + 1 == len { w.prefix().len() } else { i + 1 };
    let n = a.num_states();
    let mut alive = vec![vec![true; len]; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            for i in 0..len {
                if !alive[s][i] {
                    continue;
                }
                let ok = a
                    .transitions()
                    .iter()
                    .any(|t| t.src == s && t.letter == letter(i) && t.mark == Mark::NonAlpha && alive[t.dst][next(i)]);
                if !ok {
                    alive[s][i] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut seen = vec![vec![false; len]; n];
    let mut stack = vec![(q, 0)];
    seen[q][0] = true;
    while let Some((s, i)) = stack.pop() {
        if alive[s][i] {
            return true;
        }
        for t in a.transitions() {
            if t.src == s && t.letter == letter(i) && !seen[t.dst][next(i)] {
                seen[t.dst][next(i)] = true;
                stack.push((t.dst, next(i)));
            }
        }
    }
    false
}

/// First of `lassos` on which the initial languages of `a` and `b` differ.
pub fn naive_refute(a: &Automaton, b: &Automaton, lassos: &[LassoWord]) -> Option<LassoWord> {
    lassos
        .iter()
        .find(|w| naive_member(a, a.initial(), w) != naive_member(b, b.initial(), w))
        .cloned()
}

/// A deterministic permutation of `0..n` derived from `seed`.
pub fn permutation(n: usize, seed: u64) -> Vec<State> {
    let mut perm: Vec<State> = (0..n).collect();
    let mut x = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    for i in (1..n).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        perm.swap(i, (x % (i as u64 + 1)) as usize);
    }
    perm
}
