//! Encoding qutrits and ququads onto the polarization of two photons.
//!
//! A pure two-qubit state `α|HH⟩ + β|VV⟩ + γ|HV⟩ + δ|VH⟩` is produced from a
//! partially entangled seed `x|HH⟩ + √(1−x²)|VV⟩` by one local unitary on each
//! photon. The seed amplitude and the two unitaries come from a 2×2 singular
//! value decomposition of the amplitude matrix.
//!
//! Modules:
//! - [`qmath`]: 2×2 SVD in the `U·D·Wᵀ` convention, tensor application, Schmidt coefficients.
//! - [`encoder`]: qutrit embedding, encoding plans, the closed-form ξ-family decomposition.
//! - [`optics`]: phase-shift/rotation/phase-shift factorization, Jones matrices, pump tuning.
//! - [`mub`]: mutually unbiased bases for d = 3 and d = 4 and a two-basis key-exchange simulation.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod encoder;
pub mod mub;
pub mod optics;
pub mod qmath;

pub use encoder::{
    canonicalize, encode, fidelity, qutrit_embed, state_to_matrix, xi_closed_form, EncodeError, EncodingPlan,
    QutritState, TwoQubitState, XiDecomposition,
};
pub use mub::{
    bell_check, ququad_mub_family, qutrit_mub_family, simulate_two_basis_qkd, verify_mub, Basis, BasisState,
    MubError, MubReport, QkdOutcome,
};
pub use optics::{
    element_jones, factorize_unitary, pump_for_seed, seed_from_pump, synthesize_sequence, ElementSequence,
    OpticalElement, OpticsError, PumpBranch, PumpSetting, UnitaryFactorization,
};
pub use qmath::{
    is_unitary, schmidt_coefficients, svd2, tensor_apply, ComplexMatrix2, FourVector, QmathError, Svd2Result,
    C64,
};
