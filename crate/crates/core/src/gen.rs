//! Seeded random automata.
//!
//! The stream is `ChaCha8` seeded from a `u64`, so a seed and a configuration
//! determine the output on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, Vector};
use crate::semiring::Scalar;
use crate::wfa::Wfa;
use crate::word::Alphabet;

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub states: usize,
    pub alphabet: Alphabet,
    /// Integer weights are drawn uniformly from `low..=high`.
    pub low: i64,
    pub high: i64,
    /// Probability that an entry is `−∞` instead; 0 yields rational automata.
    pub bottom_probability: f64,
}

impl GenConfig {
    pub fn rational(states: usize, alphabet: Alphabet, low: i64, high: i64) -> Self {
        GenConfig {
            states,
            alphabet,
            low,
            high,
            bottom_probability: 0.0,
        }
    }
}

/// Alphabet `a, b, c, …` of the given size (at most 26).
pub fn letters(size: usize) -> Alphabet {
    assert!((1..=26).contains(&size), "alphabet size must be 1..=26");
    Alphabet::new((b'a'..b'a' + size as u8).map(|c| (c as char).to_string())).expect("distinct letters")
}

pub fn random_wfa<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Wfa {
    let d = cfg.states;
    let draw = |rng: &mut R| -> Scalar {
        if cfg.bottom_probability > 0.0 && rng.random_bool(cfg.bottom_probability) {
            Scalar::NegInf
        } else {
            Scalar::int(rng.random_range(cfg.low..=cfg.high))
        }
    };
    let initial: Vec<Scalar> = (0..d).map(|_| draw(rng)).collect();
    let final_weights: Vec<Scalar> = (0..d).map(|_| draw(rng)).collect();
    let transitions = (0..cfg.alphabet.len())
        .map(|_| {
            let rows = (0..d).map(|_| (0..d).map(|_| draw(rng)).collect()).collect();
            Matrix::indexed(rows).expect("square")
        })
        .collect();
    Wfa::new(
        cfg.alphabet.clone(),
        Vector::indexed(initial),
        Vector::indexed(final_weights),
        transitions,
    )
    .expect("consistent dimensions")
}

pub fn seeded_wfa(seed: u64, cfg: &GenConfig) -> Wfa {
    random_wfa(&mut ChaCha8Rng::seed_from_u64(seed), cfg)
}

/// `count` rational automata with `1..=max_states` states over
/// `1..=max_alphabet` letters and integer weights in `low..=high`.
pub fn rational_suite(seed: u64, count: usize, max_states: usize, max_alphabet: usize, low: i64, high: i64) -> Vec<Wfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let states = rng.random_range(1..=max_states);
            let sigma = rng.random_range(1..=max_alphabet);
            random_wfa(&mut rng, &GenConfig::rational(states, letters(sigma), low, high))
        })
        .collect()
}
