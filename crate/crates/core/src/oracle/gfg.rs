use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, Automaton, LassoWord, Letter, Mark, State, Transition};
use crate::error::{Error, Result};
use crate::oracle::parity::ParityGame;
use crate::par::{self, Exec};
use crate::semantics::{det_contains, determinize_breakpoint, lasso_member};

/// Number of random lassos every strategy is replayed on.
pub const REPLAY_LASSOS: usize = 200;
/// Default cap on the number of prunings `dbp_check` enumerates.
pub const DEFAULT_DBP_BOUND: u128 = 1_000_000;

/// A winning strategy of the transition picker in the letter game.
///
/// Memory is the state of the breakpoint monitor; `next(p, m, σ)` is the
/// successor of `p` chosen on `σ` when the monitor is in `m`.
#[derive(Clone, Debug)]
pub struct GfgStrategy {
    monitor: Automaton,
    initial: (State, State),
    moves: BTreeMap<(State, State, Letter), State>,
}

impl GfgStrategy {
    pub fn monitor(&self) -> &Automaton {
        &self.monitor
    }

    pub fn initial(&self) -> (State, State) {
        self.initial
    }

    pub fn next(&self, p: State, m: State, letter: Letter) -> Option<State> {
        self.moves.get(&(p, m, letter)).copied()
    }

    /// `(candidate, monitor, letter, chosen successor)` in ascending order.
    pub fn moves(&self) -> impl Iterator<Item = (State, State, Letter, State)> + '_ {
        self.moves.iter().map(|(&(p, m, l), &d)| (p, m, l, d))
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Whether the run of `a` produced by the strategy on `w` is accepting.
    /// `None` if the strategy has no move for some position on the way.
    pub fn replay(&self, a: &Automaton, w: &LassoWord) -> Option<bool> {
        let (mut p, mut m) = self.initial;
        let mut pos = 0;
        let mut seen: HashMap<(State, State, usize), usize> = HashMap::new();
        let mut marks: Vec<Mark> = Vec::new();
        loop {
            if let Some(&start) = seen.get(&(p, m, pos)) {
                return Some(marks[start..].iter().all(|mk| !mk.is_alpha()));
            }
            seen.insert((p, m, pos), marks.len());
            let l = w.letter_at(pos);
            let p2 = self.next(p, m, l)?;
            marks.push(a.mark_of(p, l, p2)?);
            m = self.monitor.det_step(m, l).0;
            p = p2;
            pos = w.next_pos(pos);
        }
    }
}

fn edge_priority(monitor: Mark, candidate: Mark) -> u32 {
    match (monitor, candidate) {
        (Mark::Alpha, _) => 2,
        (Mark::NonAlpha, Mark::Alpha) => 1,
        (Mark::NonAlpha, Mark::NonAlpha) => 0,
    }
}

/// Decides whether `a` is good for games from its initial state.
///
/// Plays the letter game against the breakpoint monitor: the letter picker
/// (player 1) chooses letters, the transition picker (player 0) resolves the
/// nondeterminism of `a`. Player 0 wins iff the monitor rejects or the run of
/// `a` is accepting, encoded as max-parity over edge priorities 2 (monitor
/// α), 1 (candidate α) and 0. A winning strategy is replayed on
/// [`REPLAY_LASSOS`] random lassos before it is returned.
pub fn gfg_verify(a: &Automaton) -> Result<Option<GfgStrategy>> {
    a.ensure_valid()?;
    let monitor = determinize_breakpoint(a).automaton;
    let start = (a.initial(), monitor.initial());

    let mut game = ParityGame::new();
    let mut letter_pos: HashMap<(State, State), usize> = HashMap::new();
    let mut order: Vec<(State, State)> = Vec::new();
    let mut choice_of: Vec<(usize, (State, State, Letter))> = Vec::new();
    let mut edge_target: HashMap<usize, State> = HashMap::new();

    let v0 = game.add_vertex(1, 0);
    letter_pos.insert(start, v0);
    order.push(start);
    let mut next = 0;
    while next < order.len() {
        let (p, m) = order[next];
        next += 1;
        let lv = letter_pos[&(p, m)];
        for l in a.letters() {
            let cv = game.add_vertex(0, 0);
            game.add_edge(lv, cv);
            choice_of.push((cv, (p, m, l)));
            let (m2, mm) = monitor.det_step(m, l);
            for &(p2, pm) in a.succ(p, l) {
                let target = match letter_pos.get(&(p2, m2)) {
                    Some(&v) => v,
                    None => {
                        let v = game.add_vertex(1, 0);
                        letter_pos.insert((p2, m2), v);
                        order.push((p2, m2));
                        v
                    }
                };
                let ev = game.add_vertex(0, edge_priority(mm, pm));
                game.add_edge(cv, ev);
                game.add_edge(ev, target);
                edge_target.insert(ev, p2);
            }
        }
    }

    let sol = game.solve();
    if sol.winner[v0] != 0 {
        return Ok(None);
    }
    let mut moves = BTreeMap::new();
    for &(cv, key) in &choice_of {
        if sol.winner[cv] == 0 {
            let ev = sol.strategy[cv].expect("winning choice has a move");
            moves.insert(key, edge_target[&ev]);
        }
    }
    let strategy = GfgStrategy {
        monitor,
        initial: start,
        moves,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x6f66);
    let k = a.num_letters();
    for _ in 0..REPLAY_LASSOS {
        let ul = rng.gen_range(0..=6);
        let vl = rng.gen_range(1..=6);
        let u = (0..ul).map(|_| rng.gen_range(0..k)).collect();
        let v = (0..vl).map(|_| rng.gen_range(0..k)).collect();
        let w = LassoWord::new(u, v)?;
        let member = lasso_member(a, a.initial(), &w)?;
        match strategy.replay(a, &w) {
            Some(acc) if acc || !member => {}
            _ => {
                return Err(Error::Oracle(format!(
                    "strategy fails on {}",
                    w.display(a.alphabet())
                )))
            }
        }
    }
    Ok(Some(strategy))
}

pub fn dbp_check(a: &Automaton, bound: u128) -> Result<Option<Automaton>> {
    dbp_check_with(a, bound, Exec::default())
}

/// Searches for a deterministic pruning of `a` with the same language.
///
/// Prunings are enumerated in mixed radix over the `(state, letter)` cells
/// in ascending order, each cell choosing among its successors in the
/// order ᾱ first, then by target; the first equivalent one is returned.
pub fn dbp_check_with(a: &Automaton, bound: u128, exec: Exec) -> Result<Option<Automaton>> {
    a.ensure_valid()?;
    let cells: Vec<(State, Letter)> = a
        .states()
        .flat_map(|q| a.letters().map(move |l| (q, l)))
        .collect();
    let needed = cells.iter().try_fold(1u128, |acc, &(q, l)| {
        acc.checked_mul(a.succ(q, l).len() as u128)
    });
    match needed {
        Some(n) if n <= bound => {}
        _ => {
            return Err(Error::BoundExceeded {
                what: "dbp_check",
                needed: needed.unwrap_or(u128::MAX),
                bound,
            })
        }
    }
    let total = needed.unwrap_or(0) as u64;
    let det = determinize_breakpoint(a).automaton;
    let found = par::find_first_in_range(exec, total, |mut idx| {
        let mut ts = Vec::with_capacity(cells.len());
        for &(q, l) in &cells {
            let cell = a.succ(q, l);
            let r = cell.len() as u64;
            let (d, m) = cell[(idx % r) as usize];
            idx /= r;
            ts.push(Transition::new(q, l, d, m));
        }
        let pruned = Automaton::from_parts(a.alphabet().clone(), a.num_states(), a.initial(), ts);
        let equal = det_contains(&pruned, pruned.initial(), &det, det.initial()).ok()?
            && det_contains(&det, det.initial(), &pruned, pruned.initial()).ok()?;
        equal.then_some(pruned)
    });
    Ok(found.map(|p| match a.name() {
        Some(n) => p.with_name(format!("{n}-pruned")),
        None => p,
    }))
}

/// A two-branch automaton for `Σ*·a^ω + Σ*·b^ω` whose first move must guess
/// which letter eventually repeats; it is not good for games.
pub fn non_gfg_union() -> Automaton {
    let sigma = Alphabet::new(["a", "b"]).expect("alphabet");
    use Transition as T;
    Automaton::new(
        sigma,
        3,
        0,
        [
            T::alpha(0, 0, 1),
            T::alpha(0, 0, 2),
            T::alpha(0, 1, 1),
            T::alpha(0, 1, 2),
            T::safe(1, 0, 1),
            T::alpha(1, 1, 1),
            T::alpha(2, 0, 2),
            T::safe(2, 1, 2),
        ],
    )
    .expect("valid")
    .with_name("non-gfg-union")
}
