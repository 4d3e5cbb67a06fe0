//! Two-basis ququad key exchange over the Bell bases IV and V.
//!
//! Each round: Alice picks one of the two bases and one of its four states;
//! Eve (optionally) measures in a random one of the two bases and resends the
//! collapsed state; Bob measures in a random one of the two bases. Rounds with
//! matching Alice/Bob bases are kept, and a kept round is an error when Bob's
//! outcome differs from Alice's state index. Outcome probabilities are squared
//! overlaps.
//!
//! Randomness: round `r` draws from ChaCha8 seeded with `seed_from_u64(rng_seed)`
//! on stream `r`. Draws happen in a fixed order (Alice basis, Alice state,
//! Eve basis, Eve outcome, Bob basis, Bob outcome), so rounds are independent
//! and can be evaluated in any order.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{ququad_mub_family, BasisState};
use crate::encoder::TwoQubitState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QkdOutcome {
    pub rounds: u64,
    pub sifted: u64,
    pub errors: u64,
    pub sift_rate: f64,
    pub qber: f64,
    pub rng_seed: u64,
}

impl QkdOutcome {
    fn from_counts(rounds: u64, sifted: u64, errors: u64, rng_seed: u64) -> Self {
        let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        Self {
            rounds,
            sifted,
            errors,
            sift_rate: ratio(sifted, rounds),
            qber: ratio(errors, sifted),
            rng_seed,
        }
    }
}

/// Per-round random source.
pub struct QkdRng(ChaCha8Rng);

impl QkdRng {
    pub fn for_round(rng_seed: u64, round: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        rng.set_stream(round);
        Self(rng)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..2^bits` from the top bits of one 32-bit word.
    pub fn bits(&mut self, bits: u32) -> usize {
        (self.0.next_u32() >> (32 - bits)) as usize
    }
}

/// Samples a measurement outcome of `state` in `basis`.
fn measure(rng: &mut QkdRng, basis: &[TwoQubitState; 4], state: &TwoQubitState) -> usize {
    let u = rng.uniform();
    let mut cumulative = 0.0;
    for (k, b) in basis.iter().enumerate() {
        cumulative += b.inner(state).norm_sqr();
        if u < cumulative {
            return k;
        }
    }
    basis.len() - 1
}

fn two_bases() -> [[TwoQubitState; 4]; 2] {
    let fam = ququad_mub_family();
    let pick = |idx: usize| -> [TwoQubitState; 4] {
        let v: Vec<TwoQubitState> = fam[idx].states.iter().map(BasisState::lifted).collect();
        [v[0], v[1], v[2], v[3]]
    };
    [pick(3), pick(4)]
}

/// Result of one round: `None` when discarded by sifting, else whether it was an error.
fn run_round(bases: &[[TwoQubitState; 4]; 2], eve: bool, rng_seed: u64, round: u64) -> Option<bool> {
    let mut rng = QkdRng::for_round(rng_seed, round);
    let alice_basis = rng.bits(1);
    let alice_index = rng.bits(2);
    let mut in_flight = bases[alice_basis][alice_index];
    if eve {
        let eve_basis = rng.bits(1);
        let k = measure(&mut rng, &bases[eve_basis], &in_flight);
        in_flight = bases[eve_basis][k];
    }
    let bob_basis = rng.bits(1);
    let bob_index = measure(&mut rng, &bases[bob_basis], &in_flight);
    (alice_basis == bob_basis).then_some(bob_index != alice_index)
}

/// Simulates `rounds` rounds of the two-basis exchange. Deterministic in `rng_seed`.
pub fn simulate_two_basis_qkd(rounds: u64, eve: bool, rng_seed: u64) -> QkdOutcome {
    let bases = two_bases();
    let (mut sifted, mut errors) = (0u64, 0u64);
    for round in 0..rounds {
        if let Some(err) = run_round(&bases, eve, rng_seed, round) {
            sifted += 1;
            errors += u64::from(err);
        }
    }
    QkdOutcome::from_counts(rounds, sifted, errors, rng_seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run() {
        let out = simulate_two_basis_qkd(0, true, 7);
        assert_eq!((out.rounds, out.sifted, out.errors), (0, 0, 0));
        assert_eq!((out.sift_rate, out.qber), (0.0, 0.0));
    }

    #[test]
    fn no_eavesdropper_no_errors() {
        let out = simulate_two_basis_qkd(20_000, false, 1);
        assert_eq!(out.errors, 0);
        assert_eq!(out.qber, 0.0);
        assert!((out.sift_rate - 0.5).abs() < 0.02);
    }

    #[test]
    fn matching_basis_is_deterministic() {
        // Overlaps within one Bell basis are exactly 0 or 1.
        for basis in two_bases() {
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let p = a.inner(b).norm_sqr();
                    if i == j {
                        assert!((p - 1.0).abs() < 1e-15);
                    } else {
                        assert_eq!(p, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn reproducible_and_order_independent() {
        let a = simulate_two_basis_qkd(5_000, true, 99);
        let b = simulate_two_basis_qkd(5_000, true, 99);
        assert_eq!(a, b);
        assert_ne!(a, simulate_two_basis_qkd(5_000, true, 100));

        let bases = two_bases();
        let reversed: Vec<_> = (0..5_000)
            .rev()
            .filter_map(|r| run_round(&bases, true, 99, r))
            .collect();
        let errors = reversed.iter().filter(|&&e| e).count() as u64;
        assert_eq!((reversed.len() as u64, errors), (a.sifted, a.errors));
    }

    #[test]
    fn uniform_is_in_unit_interval() {
        let mut rng = QkdRng::for_round(3, 4);
        for _ in 0..1000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            assert!(rng.bits(2) < 4);
        }
    }
}
