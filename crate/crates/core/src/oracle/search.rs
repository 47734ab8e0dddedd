use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, Automaton, LassoWord, Letter, Mark, Transition};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::semantics::{det_contains, determinize_breakpoint, lasso_member};

/// Default cap on `transition functions × α-subsets` per size in
/// [`min_tdcw_search_bounded`].
pub const DEFAULT_SEARCH_BOUND: u128 = 100_000_000;

fn words(k: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |l| {
                    let mut w2 = w.clone();
                    w2.push(l);
                    w2
                })
            })
            .collect();
    }
    out
}

/// All lassos with `|u| ≤ max_u` and `1 ≤ |v| ≤ max_v`, ordered by `|u|`,
/// then `|v|`, then lexicographically.
pub fn all_lassos(k: usize, max_u: usize, max_v: usize) -> Vec<LassoWord> {
    let mut out = Vec::new();
    for ul in 0..=max_u {
        let us = words(k, ul);
        for vl in 1..=max_v {
            let vs = words(k, vl);
            for u in &us {
                for v in &vs {
                    out.push(LassoWord::new(u.clone(), v.clone()).expect("non-empty period"));
                }
            }
        }
    }
    out
}

/// `count` random lassos with `|u| ≤ max_u`, `1 ≤ |v| ≤ max_v`.
pub fn sample_lassos(k: usize, count: usize, max_u: usize, max_v: usize, seed: u64) -> Vec<LassoWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ul = rng.gen_range(0..=max_u);
            let vl = rng.gen_range(1..=max_v.max(1));
            let u = (0..ul).map(|_| rng.gen_range(0..k)).collect();
            let v = (0..vl).map(|_| rng.gen_range(0..k)).collect();
            LassoWord::new(u, v).expect("non-empty period")
        })
        .collect()
}

/// The first lasso (in [`all_lassos`] order) on which `a` and `b` disagree.
pub fn lasso_equiv_bounded(
    a: &Automaton,
    b: &Automaton,
    max_u: usize,
    max_v: usize,
) -> Result<Option<LassoWord>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let lassos = all_lassos(a.num_letters(), max_u, max_v);
    let hit = par::find_first_in_range(Exec::default(), lassos.len() as u64, |i| {
        let w = &lassos[i as usize];
        let x = lasso_member(a, a.initial(), w).ok()?;
        let y = lasso_member(b, b.initial(), w).ok()?;
        (x != y).then(|| w.clone())
    });
    Ok(hit)
}

/// Edges `(q, σ)` on the cycle that a deterministic transition function
/// `f[q * k + σ]` from state 0 eventually repeats on `w`, as a bit set.
fn cycle_mask(f: &[usize], k: usize, w: &LassoWord) -> u64 {
    let mut s = 0;
    for &l in w.prefix() {
        s = f[s * k + l];
    }
    let mut starts = vec![s];
    let mut masks = Vec::new();
    loop {
        let mut m = 0u64;
        for &l in w.period() {
            m |= 1 << (s * k + l);
            s = f[s * k + l];
        }
        masks.push(m);
        if let Some(i) = starts.iter().position(|&x| x == s) {
            return masks[i..].iter().fold(0, |acc, m| acc | m);
        }
        starts.push(s);
    }
}

/// Whether every state is reached by a breadth-first walk that meets new
/// states in ascending order, which picks one function per isomorphism
/// class of initially connected automata.
fn is_bfs_canonical(f: &[usize], n: usize, k: usize) -> bool {
    let mut next = 1;
    for q in 0..n {
        if q >= next {
            return false;
        }
        for l in 0..k {
            let d = f[q * k + l];
            if d > next {
                return false;
            }
            if d == next {
                next += 1;
            }
        }
    }
    next == n
}

/// Smallest tDCW equivalent to `a` with at most `max_states` states.
///
/// Sizes are tried in ascending order. Within a size, transition functions
/// are enumerated in index order (canonical BFS numbering only) and α-sets
/// in ascending bit order; candidates are filtered on all lassos with
/// `|u| ≤ 2`, `|v| ≤ 3` and confirmed by an exact containment check.
pub fn min_tdcw_search_bounded(a: &Automaton, max_states: usize) -> Result<Option<Automaton>> {
    min_tdcw_search_with(a, max_states, DEFAULT_SEARCH_BOUND, Exec::default())
}

pub fn min_tdcw_search_with(
    a: &Automaton,
    max_states: usize,
    bound: u128,
    exec: Exec,
) -> Result<Option<Automaton>> {
    a.ensure_valid()?;
    let k = a.num_letters();
    for n in 1..=max_states {
        let cells = (n * k) as u32;
        let needed = (n as u128)
            .checked_pow(cells)
            .and_then(|f| f.checked_mul(1u128.checked_shl(cells)?));
        match needed {
            Some(c) if c <= bound && cells <= 63 => {}
            _ => {
                return Err(Error::BoundExceeded {
                    what: "min_tdcw_search",
                    needed: needed.unwrap_or(u128::MAX),
                    bound,
                })
            }
        }
    }

    let lassos = all_lassos(k, 2, 3);
    let target: Vec<bool> = lassos
        .iter()
        .map(|w| lasso_member(a, a.initial(), w))
        .collect::<Result<_>>()?;
    let det = determinize_breakpoint(a).automaton;
    let sigma: &Alphabet = a.alphabet();

    for n in 1..=max_states {
        let cells = n * k;
        let functions = (n as u64).pow(cells as u32);
        let found = par::find_first_in_range(exec, functions, |mut idx| {
            let mut f = vec![0; cells];
            for c in f.iter_mut() {
                *c = (idx % n as u64) as usize;
                idx /= n as u64;
            }
            if !is_bfs_canonical(&f, n, k) {
                return None;
            }
            let masks: Vec<u64> = lassos.iter().map(|w| cycle_mask(&f, k, w)).collect();
            let forbidden = masks
                .iter()
                .zip(&target)
                .filter(|(_, &t)| t)
                .fold(0u64, |acc, (m, _)| acc | m);
            let rejecting: Vec<u64> = masks
                .iter()
                .zip(&target)
                .filter(|(_, &t)| !t)
                .map(|(m, _)| *m)
                .collect();
            if rejecting.iter().any(|m| m & !forbidden == 0) {
                return None;
            }
            (0..1u64 << cells)
                .filter(|alpha| alpha & forbidden == 0)
                .filter(|alpha| rejecting.iter().all(|m| m & alpha != 0))
                .find_map(|alpha| {
                    let ts = (0..cells).map(|c| {
                        let mark = if alpha >> c & 1 == 1 {
                            Mark::Alpha
                        } else {
                            Mark::NonAlpha
                        };
                        Transition::new(c / k, c % k, f[c], mark)
                    });
                    let cand = Automaton::from_parts(sigma.clone(), n, 0, ts);
                    let ok = det_contains(&cand, 0, &det, det.initial()).ok()?
                        && det_contains(&det, det.initial(), &cand, 0).ok()?;
                    ok.then_some(cand)
                })
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::semantics::language_equiv;

    fn universal(k: usize) -> Automaton {
        let sigma = Alphabet::with_size(k).unwrap();
        Automaton::new(sigma, 1, 0, (0..k).map(|l| Transition::safe(0, l, 0))).unwrap()
    }

    #[test]
    fn lasso_enumeration_order() {
        let ls = all_lassos(2, 1, 2);
        assert_eq!(ls.len(), 3 * 6);
        assert_eq!(ls[0], LassoWord::new(vec![], vec![0]).unwrap());
        assert_eq!(ls[2], LassoWord::new(vec![], vec![0, 0]).unwrap());
        assert_eq!(ls[6], LassoWord::new(vec![0], vec![0]).unwrap());
    }

    #[test]
    fn bounded_lasso_sweeps() {
        let (d1, d2) = (fixtures::fig6d1(), fixtures::fig6d2());
        assert_eq!(lasso_equiv_bounded(&d1, &d1, 3, 3).unwrap(), None);
        assert_eq!(lasso_equiv_bounded(&d1, &d2, 4, 4).unwrap(), None);
        let mut u = universal(2);
        u = Automaton::new(d1.alphabet().clone(), 1, 0, u.transitions().iter().copied()).unwrap();
        let w = lasso_equiv_bounded(&d1, &u, 2, 2).unwrap().expect("differ");
        assert_eq!(w, LassoWord::new(vec![], vec![0]).unwrap());
        assert_eq!(w.display(d1.alphabet()).to_string(), "(b)^w");
    }

    #[test]
    fn canonical_functions_are_counted_once() {
        // initially connected 2-state automata over one letter: 0->1, 1->{0,1}
        let n = 2;
        let fs: Vec<Vec<usize>> = (0..4)
            .map(|i| vec![i % 2, i / 2])
            .filter(|f| is_bfs_canonical(f, n, 1))
            .collect();
        assert_eq!(fs, vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn fig6_language_needs_two_states() {
        let d = fixtures::fig6d1();
        assert_eq!(min_tdcw_search_bounded(&d, 1).unwrap(), None);
        let m = min_tdcw_search_bounded(&d, 2).unwrap().expect("2-state tDCW");
        assert_eq!(m.num_states(), 2);
        assert!(language_equiv(&m, &d).unwrap());
    }

    #[test]
    fn universal_is_one_state() {
        let u = universal(3);
        let m = min_tdcw_search_bounded(&u, 1).unwrap().unwrap();
        assert_eq!(m, u);
    }

    #[test]
    fn fig2_language_needs_two_states() {
        let a = fixtures::fig2();
        assert_eq!(min_tdcw_search_bounded(&a, 1).unwrap(), None);
        let m = min_tdcw_search_bounded(&a, 2).unwrap().expect("found");
        assert_eq!(m.num_states(), 2);
        assert!(language_equiv(&m, &a).unwrap());
    }

    #[test]
    fn sequential_search_agrees() {
        let a = fixtures::fig1a();
        assert_eq!(
            min_tdcw_search_with(&a, 3, DEFAULT_SEARCH_BOUND, Exec::Sequential).unwrap(),
            min_tdcw_search_with(&a, 3, DEFAULT_SEARCH_BOUND, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn bound_is_enforced() {
        let a = fixtures::fig2();
        assert!(matches!(
            min_tdcw_search_bounded(&a, 4),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
