//! Seeded random Presburger sets for fuzzing.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PresburgerSet, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomConfig {
    pub max_terms: usize,
    pub max_modulus: u64,
    pub max_bound: i64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { max_terms: 4, max_modulus: 12, max_bound: 100 }
    }
}

pub fn random_set<R: Rng>(rng: &mut R, cfg: RandomConfig) -> PresburgerSet {
    let k = rng.gen_range(1..=cfg.max_terms);
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        let b = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=cfg.max_modulus) };
        let a = if b == 0 {
            rng.gen_range(-cfg.max_bound..=cfg.max_bound)
        } else if rng.gen_bool(0.4) {
            0
        } else {
            rng.gen_range(0..b as i64)
        };
        let mut bound = || rng.gen_bool(0.5).then(|| rng.gen_range(-cfg.max_bound..=cfg.max_bound));
        let (mut lo, mut hi) = (bound(), bound());
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                (lo, hi) = (Some(h), Some(l + 1));
            }
        }
        terms.push(Term::progression(a, b, lo, hi));
    }
    PresburgerSet::new(terms)
}

/// `count` sets from a ChaCha8 stream seeded with `seed`.
pub fn corpus(seed: u64, count: usize, cfg: RandomConfig) -> Vec<PresburgerSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_set(&mut rng, cfg)).collect()
}
