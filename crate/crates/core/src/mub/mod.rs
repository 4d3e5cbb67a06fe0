//! Mutually unbiased bases for qutrits (d = 3) and ququads (d = 4).
//!
//! Qutrit states live on `{|HH⟩, |VV⟩, |ψ⁺⟩}`. The four qutrit bases are the
//! computational basis plus three Weyl-phase bases
//! `(|HH⟩ + ω^a|VV⟩ + ω^b|ψ⁺⟩)/√3`, `ω = e^{2πi/3}`.
//!
//! The ququad bases I–V are the σz⊗σz, σx⊗σx and σy⊗σy product eigenbases
//! followed by two Bell bases.

mod qkd;

pub use qkd::{simulate_two_basis_qkd, QkdOutcome, QkdRng};

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use thiserror::Error;

use crate::encoder::{qutrit_embed, xi_state, QutritState, TwoQubitState};
use crate::qmath::{c, schmidt_coefficients, C64};

/// Weyl exponents `(a, b)` of the three non-computational qutrit bases.
const QUTRIT_PHASE_TRIPLES: [[(u8, u8); 3]; 3] = [
    [(0, 0), (1, 2), (2, 1)],
    [(0, 1), (1, 0), (2, 2)],
    [(0, 2), (2, 0), (1, 1)],
];

/// Bell-check tolerance on the Schmidt coefficients.
pub const BELL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MubError {
    #[error("expected a d={expected} basis, got d={found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("bases have mixed dimensions")]
    MixedDimensions,
    #[error("no bases given")]
    Empty,
}

/// One basis vector, stored in its natural coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisState {
    Qutrit(QutritState),
    TwoQubit(TwoQubitState),
}

impl BasisState {
    pub fn dimension(&self) -> usize {
        match self {
            BasisState::Qutrit(_) => 3,
            BasisState::TwoQubit(_) => 4,
        }
    }

    /// The state on the two-photon carrier.
    pub fn lifted(&self) -> TwoQubitState {
        match self {
            BasisState::Qutrit(q) => qutrit_embed(q),
            BasisState::TwoQubit(s) => *s,
        }
    }

    /// Components in the basis's own coordinates (3 or 4 entries).
    pub fn components(&self) -> Vec<C64> {
        match self {
            BasisState::Qutrit(q) => q.components().to_vec(),
            BasisState::TwoQubit(s) => s.amplitudes().to_vec(),
        }
    }

    /// `⟨self|other⟩`; the qutrit embedding is an isometry so mixed pairs lift.
    pub fn inner(&self, other: &Self) -> C64 {
        match (self, other) {
            (BasisState::Qutrit(a), BasisState::Qutrit(b)) => a.inner(b),
            _ => self.lifted().inner(&other.lifted()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub label: String,
    pub states: Vec<BasisState>,
}

impl Basis {
    pub fn dimension(&self) -> usize {
        self.states.first().map_or(0, BasisState::dimension)
    }

    /// `max |⟨a_i|a_j⟩ − δ_ij|`.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.states.iter().enumerate() {
            for (j, b) in self.states.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b) - c(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// The four pairwise unbiased qutrit bases.
pub fn qutrit_mub_family() -> Vec<Basis> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let computational = Basis {
        label: "Z".to_string(),
        states: [
            QutritState::new(one, zero, zero),
            QutritState::new(zero, one, zero),
            QutritState::new(zero, zero, one),
        ]
        .into_iter()
        .map(BasisState::Qutrit)
        .collect(),
    };
    let third = 2.0 * PI / 3.0;
    let weyl = QUTRIT_PHASE_TRIPLES
        .iter()
        .zip(["V", "W1", "W2"])
        .map(|(triple, label)| Basis {
            label: label.to_string(),
            states: triple
                .iter()
                .map(|&(a, b)| BasisState::Qutrit(xi_state(third * f64::from(a), third * f64::from(b))))
                .collect(),
        });
    core::iter::once(computational).chain(weyl).collect()
}

fn ket(a: [C64; 2], b: [C64; 2]) -> [C64; 4] {
    // (|00⟩, |11⟩, |01⟩, |10⟩)
    [a[0] * b[0], a[1] * b[1], a[0] * b[1], a[1] * b[0]]
}

fn combine(x: [C64; 4], sign: f64, y: [C64; 4], norm: f64) -> TwoQubitState {
    let s = c(norm, 0.0);
    let z: [C64; 4] = core::array::from_fn(|k| (x[k] + y[k] * sign) * s);
    TwoQubitState::new(z[0], z[1], z[2], z[3])
}

/// Bases I–V, normalized. Within each line of `±` states the `+` state comes first.
pub fn ququad_mub_family() -> Vec<Basis> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    let h = FRAC_1_SQRT_2;
    let k0 = [one, zero];
    let k1 = [zero, one];
    let unit = |v: [C64; 2]| [v[0] * h, v[1] * h];
    let plus = unit([one, one]);
    let minus = unit([one, -one]);
    let plus_i = unit([one, i]);
    let minus_i = unit([one, -i]);

    let product = |pairs: [([C64; 2], [C64; 2]); 4]| -> Vec<BasisState> {
        pairs
            .into_iter()
            .map(|(a, b)| {
                let v = ket(a, b);
                BasisState::TwoQubit(TwoQubitState::new(v[0], v[1], v[2], v[3]))
            })
            .collect()
    };
    let bell = |first: [([C64; 2], [C64; 2]); 2], second: [([C64; 2], [C64; 2]); 2]| -> Vec<BasisState> {
        [first, second]
            .into_iter()
            .flat_map(|[(a, b), (c2, d)]| {
                let (x, y) = (ket(a, b), ket(c2, d));
                [1.0, -1.0].map(|sign| BasisState::TwoQubit(combine(x, sign, y, h)))
            })
            .collect()
    };

    alloc::vec![
        Basis {
            label: "I".to_string(),
            states: product([(k0, k0), (k0, k1), (k1, k0), (k1, k1)]),
        },
        Basis {
            label: "II".to_string(),
            states: product([(plus, plus), (plus, minus), (minus, plus), (minus, minus)]),
        },
        Basis {
            label: "III".to_string(),
            states: product([
                (plus_i, plus_i),
                (plus_i, minus_i),
                (minus_i, plus_i),
                (minus_i, minus_i)
            ]),
        },
        Basis {
            label: "IV".to_string(),
            states: bell([(plus_i, k0), (minus_i, k1)], [(minus_i, k0), (plus_i, k1)]),
        },
        Basis {
            label: "V".to_string(),
            states: bell([(k0, plus_i), (k1, minus_i)], [(k0, minus_i), (k1, plus_i)]),
        },
    ]
}

/// True iff every state of a d = 4 basis is maximally entangled.
pub fn bell_check(b: &Basis) -> Result<bool, MubError> {
    if b.dimension() != 4 {
        return Err(MubError::WrongDimension {
            expected: 4,
            found: b.dimension(),
        });
    }
    Ok(b.states.iter().all(|s| {
        schmidt_coefficients(&s.lifted().to_vector()).is_ok_and(|(s1, s2)| {
            (s1 - FRAC_1_SQRT_2).abs() <= BELL_TOL && (s2 - FRAC_1_SQRT_2).abs() <= BELL_TOL
        })
    }))
}

/// Deviations of a set of bases from being orthonormal and mutually unbiased.
#[derive(Debug, Clone, PartialEq)]
pub struct MubReport {
    pub dimension: usize,
    pub tol: f64,
    /// Per basis, `max |⟨a_i|a_j⟩ − δ_ij|`.
    pub orthonormality: Vec<f64>,
    /// Per basis pair `(i, j)`, `max | |⟨a|b⟩|² − 1/d |`.
    pub overlap: Vec<((usize, usize), f64)>,
}

impl MubReport {
    pub fn max_orthonormality_deviation(&self) -> f64 {
        self.orthonormality.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_overlap_deviation(&self) -> f64 {
        self.overlap.iter().map(|&(_, d)| d).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_orthonormality_deviation() <= self.tol && self.max_overlap_deviation() <= self.tol
    }
}

pub fn verify_mub(bases: &[Basis], tol: f64) -> Result<MubReport, MubError> {
    let dimension = bases.first().ok_or(MubError::Empty)?.dimension();
    if bases
        .iter()
        .any(|b| b.dimension() != dimension || b.states.len() != dimension)
    {
        return Err(MubError::MixedDimensions);
    }
    let unbiased = 1.0 / dimension as f64;
    let orthonormality = bases.iter().map(Basis::orthonormality_deviation).collect();
    let mut overlap = Vec::new();
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let worst = bases[i]
                .states
                .iter()
                .flat_map(|a| {
                    bases[j]
                        .states
                        .iter()
                        .map(move |b| (a.inner(b).norm_sqr() - unbiased).abs())
                })
                .fold(0.0, f64::max);
            overlap.push(((i, j), worst));
        }
    }
    Ok(MubReport {
        dimension,
        tol,
        orthonormality,
        overlap,
    })
}
