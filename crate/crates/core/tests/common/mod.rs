#![allow(dead_code)]

use qudit_core::{svd2, ComplexMatrix2, TwoQubitState, C64};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct TestRng(ChaCha8Rng);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform in the closed unit disc.
    pub fn disc(&mut self) -> C64 {
        loop {
            let z = C64::new(self.range(-1.0, 1.0), self.range(-1.0, 1.0));
            if z.norm_sqr() <= 1.0 {
                return z;
            }
        }
    }

    pub fn matrix(&mut self) -> ComplexMatrix2 {
        ComplexMatrix2::new([[self.disc(), self.disc()], [self.disc(), self.disc()]]).unwrap()
    }

    /// Left singular factor of a random matrix.
    pub fn unitary(&mut self) -> ComplexMatrix2 {
        svd2(&self.matrix()).unwrap().u
    }

    pub fn phase(&mut self) -> C64 {
        C64::from_polar(1.0, self.range(-std::f64::consts::PI, std::f64::consts::PI))
    }

    pub fn state(&mut self) -> TwoQubitState {
        TwoQubitState::new(self.disc(), self.disc(), self.disc(), self.disc())
            .normalized()
            .unwrap()
    }
}

/// Eigenvalues of the reduced density matrix `ΨΨ†`, descending, from the
/// characteristic polynomial `λ² − tλ + det = 0`.
pub fn reduced_spectrum(s: &TwoQubitState) -> (f64, f64) {
    let rho00 = s.alpha.norm_sqr() + s.gamma.norm_sqr();
    let rho11 = s.delta.norm_sqr() + s.beta.norm_sqr();
    let rho01 = s.alpha * s.delta.conj() + s.gamma * s.beta.conj();
    let t = rho00 + rho11;
    let det = rho00 * rho11 - rho01.norm_sqr();
    let disc = (t * t / 4.0 - det).max(0.0).sqrt();
    (t / 2.0 + disc, (t / 2.0 - disc).max(0.0))
}
