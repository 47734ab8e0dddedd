//! Seeded generator of random total tDCWs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, Automaton, Mark, Transition};
use crate::error::{Error, Result};

/// One transition per state and letter with a uniformly random target, marked
/// α with probability `density`. Total and deterministic by construction.
pub fn random_tdcw(states: usize, letters: usize, density: f64, seed: u64) -> Result<Automaton> {
    if states == 0 {
        return Err(Error::Bound("need at least one state".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Bound(format!("density {density} is not in [0, 1]")));
    }
    let sigma = Alphabet::with_size(letters)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts = Vec::with_capacity(states * letters);
    for q in 0..states {
        for l in 0..letters {
            let dst = rng.gen_range(0..states);
            let mark = if rng.gen_bool(density) {
                Mark::Alpha
            } else {
                Mark::NonAlpha
            };
            ts.push(Transition::new(q, l, dst, mark));
        }
    }
    Ok(Automaton::new(sigma, states, 0, ts)?.with_name(format!("random-{seed}")))
}

/// Shape of the corpus instance for `seed`: `(states, letters, density)`.
pub fn corpus_params(seed: u64) -> (usize, usize, f64) {
    const DENSITIES: [f64; 3] = [0.2, 0.35, 0.5];
    let states = 1 + (seed % 5) as usize;
    let letters = 2 + ((seed / 5) % 2) as usize;
    let density = DENSITIES[((seed / 10) % 3) as usize];
    (states, letters, density)
}

pub fn corpus_instance(seed: u64) -> Automaton {
    let (n, k, d) = corpus_params(seed);
    random_tdcw(n, k, d, seed).expect("corpus parameters are valid")
}

/// Instances for seeds `1..=count`.
pub fn corpus(count: u64) -> Vec<Automaton> {
    (1..=count).map(corpus_instance).collect()
}
