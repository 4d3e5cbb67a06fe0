//! Seed-plus-local-unitaries encoding of two-qubit states.
//!
//! The amplitude matrix `Ψ = [[α, γ], [δ, β]]` satisfies
//! `|ψ⟩ = (Ψ ⊗ I)(|00⟩ + |11⟩)`. Writing `Ψ = U·D·Wᵀ` then gives
//! `|ψ⟩ = (U ⊗ W)(d₁|00⟩ + d₂|11⟩)`, so the singular values are the seed
//! amplitudes and `U`, `W` are the local operations.

use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

#[cfg(not(feature = "std"))]
use num_traits::Float;
use thiserror::Error;

use crate::qmath::{
    c, cis, svd2, tensor_apply, ComplexMatrix2, FourVector, QmathError, C64, EXACT_TOL, ZERO_MODULUS,
};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EncodeError {
    #[error("state is the zero vector")]
    ZeroVector,
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("state has a non-finite amplitude")]
    NonFinite,
}

impl From<QmathError> for EncodeError {
    fn from(e: QmathError) -> Self {
        match e {
            QmathError::NonFinite => EncodeError::NonFinite,
            QmathError::NotNormalized { norm } => EncodeError::NotNormalized { norm },
        }
    }
}

/// Qutrit amplitudes over `{|HH⟩, |VV⟩, |ψ⁺⟩}` with `|ψ⁺⟩ = (|HV⟩ + |VH⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritState {
    pub c0: C64,
    pub c1: C64,
    pub c2: C64,
}

impl QutritState {
    pub const fn new(c0: C64, c1: C64, c2: C64) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn components(&self) -> [C64; 3] {
        [self.c0, self.c1, self.c2]
    }

    pub fn norm(&self) -> f64 {
        self.components().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩` in the qutrit basis.
    pub fn inner(&self, other: &Self) -> C64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1 + self.c2.conj() * other.c2
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Result<Self, EncodeError> {
        let n = self.norm();
        if !n.is_finite() {
            return Err(EncodeError::NonFinite);
        }
        if n <= ZERO_MODULUS {
            return Err(EncodeError::ZeroVector);
        }
        let s = c(1.0 / n, 0.0);
        Ok(Self::new(self.c0 * s, self.c1 * s, self.c2 * s))
    }
}

/// `α|HH⟩ + β|VV⟩ + γ|HV⟩ + δ|VH⟩`, with `H ≡ 0` and `V ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl TwoQubitState {
    pub const fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn to_vector(&self) -> FourVector {
        FourVector(self.amplitudes())
    }

    pub fn from_vector(v: &FourVector) -> Self {
        let [alpha, beta, gamma, delta] = v.0;
        Self {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_vector().norm()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.to_vector().inner(&other.to_vector())
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Result<Self, EncodeError> {
        let v = self.to_vector();
        if !v.is_finite() {
            return Err(EncodeError::NonFinite);
        }
        let n = v.norm();
        if n <= ZERO_MODULUS {
            return Err(EncodeError::ZeroVector);
        }
        Ok(Self::from_vector(&v.scale(c(1.0 / n, 0.0))))
    }

    fn check_unit(&self) -> Result<(), EncodeError> {
        let v = self.to_vector();
        if !v.is_finite() {
            return Err(EncodeError::NonFinite);
        }
        let norm = v.norm();
        if norm <= ZERO_MODULUS {
            return Err(EncodeError::ZeroVector);
        }
        if (norm - 1.0).abs() > EXACT_TOL {
            return Err(EncodeError::NotNormalized { norm });
        }
        Ok(())
    }
}

/// Removes the global phase: the first amplitude (in the order α, β, γ, δ)
/// with modulus above 1e-12 becomes real positive.
pub fn canonicalize(s: &TwoQubitState) -> Result<TwoQubitState, EncodeError> {
    s.check_unit()?;
    let amps = s.amplitudes();
    let lead = amps
        .iter()
        .position(|z| z.norm() > ZERO_MODULUS)
        .ok_or(EncodeError::ZeroVector)?;
    let phase = (amps[lead] / amps[lead].norm()).conj();
    let mut out = s.to_vector().scale(phase);
    // Pin the leading amplitude to an exact real.
    out.0[lead] = c(amps[lead].norm(), 0.0);
    Ok(TwoQubitState::from_vector(&out))
}

/// Lifts a qutrit onto the symmetric two-qubit subspace.
pub fn qutrit_embed(q: &QutritState) -> TwoQubitState {
    let h = c(FRAC_1_SQRT_2, 0.0);
    TwoQubitState::new(q.c0, q.c1, q.c2 * h, q.c2 * h)
}

/// `Ψ = [[α, γ], [δ, β]]`, i.e. `Ψ[i][j]` is the amplitude of `|ij⟩`.
pub fn state_to_matrix(s: &TwoQubitState) -> ComplexMatrix2 {
    ComplexMatrix2::from_rows([[s.alpha, s.gamma], [s.delta, s.beta]])
}

/// Inverse of [`state_to_matrix`].
pub fn matrix_to_state(m: &ComplexMatrix2) -> TwoQubitState {
    TwoQubitState::new(m.get(0, 0), m.get(1, 1), m.get(0, 1), m.get(1, 0))
}

/// Seed amplitude `x` plus the local unitaries: `|ψ⟩ = (u ⊗ w)(x|HH⟩ + √(1−x²)|VV⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingPlan {
    pub x: f64,
    pub u: ComplexMatrix2,
    pub w: ComplexMatrix2,
}

impl EncodingPlan {
    /// `x|HH⟩ + √(1−x²)|VV⟩`.
    pub fn seed(&self) -> TwoQubitState {
        seed_state(self.x)
    }

    /// `(u ⊗ w)` applied to the seed.
    pub fn apply(&self) -> TwoQubitState {
        TwoQubitState::from_vector(&tensor_apply(&self.u, &self.w, &self.seed().to_vector()))
    }

    /// The equivalent plan `(x, u·Z, w·Z*)` for the diagonal unitary `Z = diag(z0, z1)`.
    pub fn rephased(&self, z0: C64, z1: C64) -> Self {
        let z = ComplexMatrix2::diag(z0, z1);
        Self {
            x: self.x,
            u: self.u * z,
            w: self.w * z.conj(),
        }
    }
}

/// The seed state `x|HH⟩ + √(1−x²)|VV⟩`.
pub fn seed_state(x: f64) -> TwoQubitState {
    let partner = (1.0 - x * x).max(0.0).sqrt();
    TwoQubitState::new(c(x, 0.0), c(partner, 0.0), c(0.0, 0.0), c(0.0, 0.0))
}

/// Computes the seed amplitude and local unitaries for a normalized state.
///
/// The state is phase-canonicalized first. `x` is always the larger singular
/// value, so `x ≥ 1/√2`.
pub fn encode(s: &TwoQubitState) -> Result<EncodingPlan, EncodeError> {
    let t = canonicalize(s)?;
    let svd = svd2(&state_to_matrix(&t))?;
    Ok(EncodingPlan {
        x: svd.d1.min(1.0),
        u: svd.u,
        w: svd.w,
    })
}

/// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
pub fn fidelity(a: &TwoQubitState, b: &TwoQubitState) -> f64 {
    a.inner(b).norm_sqr().clamp(0.0, 1.0)
}

/// `(|HH⟩ + e^{iψ}|VV⟩ + e^{iφ}|ψ⁺⟩)/√3`.
pub fn xi_state(psi: f64, phi: f64) -> QutritState {
    let k = c(1.0 / 3f64.sqrt(), 0.0);
    QutritState::new(k, cis(psi) * k, cis(phi) * k)
}

/// Amplitude matrix of the lifted [`xi_state`].
pub fn xi_matrix(psi: f64, phi: f64) -> ComplexMatrix2 {
    state_to_matrix(&qutrit_embed(&xi_state(psi, phi)))
}

/// Phases `(ψ, φ)` of a qutrit of the ξ form (all moduli `1/√3`, up to global phase),
/// or `None` if the moduli differ from `1/√3` by more than `tol`.
pub fn xi_parameters(q: &QutritState, tol: f64) -> Option<(f64, f64)> {
    let k = 1.0 / 3f64.sqrt();
    if q.components().iter().any(|z| (z.norm() - k).abs() > tol) {
        return None;
    }
    let ref_phase = q.c0.arg();
    Some((
        crate::qmath::wrap_phase(q.c1.arg() - ref_phase),
        crate::qmath::wrap_phase(q.c2.arg() - ref_phase),
    ))
}

/// Explicit `U·diag(d)·Wᵀ = ξ` decomposition for the ξ family.
///
/// `d` is in formula order and is not sorted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiDecomposition {
    pub u: ComplexMatrix2,
    pub d: (f64, f64),
    pub w: ComplexMatrix2,
}

impl XiDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix2 {
        self.u * ComplexMatrix2::diag(c(self.d.0, 0.0), c(self.d.1, 0.0)) * self.w.transpose()
    }
}

pub fn xi_closed_form(psi: f64, phi: f64) -> XiDecomposition {
    let h = c(FRAC_1_SQRT_2, 0.0);
    let rel = cis(phi - psi / 2.0);
    let unit_arg = |z: C64| cis(z.arg());
    let r2 = c(SQRT_2, 0.0);
    let u = ComplexMatrix2::from_rows([
        [unit_arg(r2 + rel) * h, unit_arg(r2 - rel) * h],
        [
            unit_arg(cis(phi) + r2 * cis(psi / 2.0)) * h,
            unit_arg(cis(phi) - r2 * cis(psi / 2.0)) * h,
        ],
    ]);
    let half_psi = cis(psi / 2.0);
    let w = ComplexMatrix2::from_rows([[h, h], [half_psi * h, -half_psi * h]]);
    let k = (SQRT_2 / 3.0) * (psi / 2.0 - phi).cos();
    let d = ((0.5 + k).sqrt(), (0.5 - k).sqrt());
    XiDecomposition { u, d, w }
}
