//! Shared helpers for the integration suites: worm enumeration and seeded
//! random ordinal generation.

use glp_core::{CnfOrdinal, Worm};
use rand::Rng;

/// All worms over `indices` with length at most `max_len`, shortest first.
pub fn enumerate_worms(max_len: usize, indices: &[u64]) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> = vec![vec![]];
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &i in indices {
                let mut v = vec![i];
                v.extend(w);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

pub fn worm(indices: &[u64]) -> Worm {
    Worm::from_nats(indices)
}

/// Random ordinal strictly below w^w: a short sum of terms w^e*c with
/// finite exponents. Summation through `plus` keeps the result in normal
/// form whatever order the terms come in.
pub fn random_below_w_w(rng: &mut impl Rng) -> CnfOrdinal {
    let mut acc = CnfOrdinal::nat(rng.gen_range(0..4));
    for _ in 0..rng.gen_range(0..3) {
        let exp = CnfOrdinal::nat(rng.gen_range(0..5));
        let coeff = rng.gen_range(1..4u64);
        let mut term = CnfOrdinal::zero();
        for _ in 0..coeff {
            term = term.plus(&exp.omega_power());
        }
        acc = acc.plus(&term);
    }
    acc
}

/// Random ordinal strictly below w^(w^w): exponents drawn below w^w.
pub fn random_below_w_w_w(rng: &mut impl Rng) -> CnfOrdinal {
    let mut acc = CnfOrdinal::nat(rng.gen_range(0..4));
    for _ in 0..rng.gen_range(1..4) {
        let exp = random_below_w_w(rng);
        let coeff = rng.gen_range(1..4u64);
        let mut term = CnfOrdinal::zero();
        for _ in 0..coeff {
            term = term.plus(&exp.omega_power());
        }
        acc = acc.plus(&term);
    }
    acc
}
