//! Linear-optical realization of the local unitaries.
//!
//! Any 2×2 unitary is written as
//!
//! ```text
//! [[ e^{iα} cosθ,  e^{iβ} sinθ          ],
//!  [ -e^{iγ} sinθ, e^{i(β+γ−α)} cosθ    ]]
//!   = diag(e^{iβ}, e^{i(β+γ−α)}) · R(θ) · diag(e^{i(α−β)}, 1)
//! ```
//!
//! so a phase plate, a polarization rotator and a second phase plate realize
//! it up to a global phase.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

#[cfg(not(feature = "std"))]
use num_traits::Float;
use thiserror::Error;

use crate::qmath::{c, cis, wrap_phase, ComplexMatrix2};

/// Input unitarity tolerance for [`factorize_unitary`].
pub const FACTORIZE_UNITARY_TOL: f64 = 1e-10;

/// Below this, `cosθ` or `sinθ` is treated as zero and its phases are undetermined.
const DEGENERATE_AMPLITUDE: f64 = 1e-14;

/// Phase plates and rotators closer than this to the identity are dropped by
/// [`ElementSequence::with_half_wave_plates`].
const NULL_ANGLE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OpticsError {
    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("pump waveplate angle {0} outside [0, pi/4]")]
    PumpAngleOutOfRange(f64),
    #[error("seed amplitude {0} outside [0, 1]")]
    SeedOutOfRange(f64),
}

/// Parameters `(α, β, γ, θ)` of the phase/rotation/phase form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryFactorization {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
}

impl UnitaryFactorization {
    /// Reassembles the unitary from its parameters.
    pub fn reassemble(&self) -> ComplexMatrix2 {
        let (s, co) = self.theta.sin_cos();
        ComplexMatrix2::from_rows([
            [cis(self.alpha) * co, cis(self.beta) * s],
            [
                -cis(self.gamma) * s,
                cis(self.beta + self.gamma - self.alpha) * co,
            ],
        ])
    }
}

/// Factorizes a unitary into `(α, β, γ, θ)` with `θ ∈ [0, π/2]`.
///
/// When `cosθ` vanishes `α` is set to 0; when `sinθ` vanishes `β` is set to 0
/// and `γ` absorbs the phase of the lower-right entry.
pub fn factorize_unitary(u: &ComplexMatrix2) -> Result<UnitaryFactorization, OpticsError> {
    let deviation = u.unitarity_deviation();
    if deviation.is_nan() || deviation > FACTORIZE_UNITARY_TOL {
        return Err(OpticsError::NotUnitary { deviation });
    }
    let (a, b) = (u.get(0, 0), u.get(0, 1));
    let theta = b.norm().atan2(a.norm());
    let cos_zero = a.norm() <= DEGENERATE_AMPLITUDE;
    let sin_zero = b.norm() <= DEGENERATE_AMPLITUDE;

    let alpha = if cos_zero { 0.0 } else { a.arg() };
    let (beta, gamma) = if sin_zero {
        // Only β + γ is fixed: by the phase of u[1][1].
        (0.0, wrap_phase(u.get(1, 1).arg() + alpha))
    } else {
        (b.arg(), (-u.get(1, 0)).arg())
    };
    Ok(UnitaryFactorization {
        alpha,
        beta,
        gamma,
        theta,
    })
}

/// A linear-optical element acting on one photon's polarization. Angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OpticalElement {
    /// Delays V relative to H by `delta`: `diag(1, e^{−iδ})`.
    PhasePlate { delta: f64 },
    /// Polarization rotator `[[cosθ, sinθ], [−sinθ, cosθ]]`.
    Rotator { theta: f64 },
    /// Half-wave plate with its fast axis at `axis`.
    HalfWavePlate { axis: f64 },
    /// Quarter-wave plate with its fast axis at `axis`.
    QuarterWavePlate { axis: f64 },
}

impl OpticalElement {
    pub fn jones(&self) -> ComplexMatrix2 {
        element_jones(self)
    }
}

/// Jones matrix of an element.
pub fn element_jones(e: &OpticalElement) -> ComplexMatrix2 {
    match *e {
        OpticalElement::PhasePlate { delta } => ComplexMatrix2::diag(c(1.0, 0.0), cis(-delta)),
        OpticalElement::Rotator { theta } => {
            let (s, co) = theta.sin_cos();
            ComplexMatrix2::from_rows([[c(co, 0.0), c(s, 0.0)], [c(-s, 0.0), c(co, 0.0)]])
        }
        OpticalElement::HalfWavePlate { axis } => {
            let (s, co) = (2.0 * axis).sin_cos();
            ComplexMatrix2::from_rows([[c(co, 0.0), c(s, 0.0)], [c(s, 0.0), c(-co, 0.0)]])
        }
        OpticalElement::QuarterWavePlate { axis } => {
            // R(−a)·diag(1, i)·R(a)
            let (s, co) = axis.sin_cos();
            let off = c(1.0, -1.0) * (s * co);
            ComplexMatrix2::from_rows([[c(co * co, s * s), off], [off, c(s * s, co * co)]])
        }
    }
}

/// Elements in the order light meets them, plus an unobservable global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementSequence {
    pub elements: Vec<OpticalElement>,
    pub global_phase: f64,
}

impl ElementSequence {
    /// `e^{iφ} · J_n ⋯ J_1`.
    pub fn matrix(&self) -> ComplexMatrix2 {
        self.elements
            .iter()
            .fold(ComplexMatrix2::identity(), |acc, e| e.jones() * acc)
            .scale(cis(self.global_phase))
    }

    /// Largest entrywise deviation from `target`.
    pub fn residual(&self, target: &ComplexMatrix2) -> f64 {
        self.matrix().max_abs_diff(target)
    }

    /// Rewrites each rotator as a half-wave plate, using
    /// `R(θ) = diag(1, −1) · HWP(θ/2)`, and drops identity elements.
    ///
    /// The matrix (including the global phase) is unchanged.
    pub fn with_half_wave_plates(&self) -> ElementSequence {
        let mut out: Vec<OpticalElement> = Vec::with_capacity(self.elements.len() + 1);
        let mut pending_flip = false;
        for e in &self.elements {
            match *e {
                OpticalElement::Rotator { theta } if wrap_phase(theta).abs() > NULL_ANGLE => {
                    if pending_flip {
                        out.push(OpticalElement::PhasePlate { delta: PI });
                    }
                    pending_flip = true;
                    out.push(OpticalElement::HalfWavePlate { axis: theta / 2.0 });
                }
                OpticalElement::Rotator { .. } => {}
                OpticalElement::PhasePlate { delta } => {
                    let delta = if pending_flip { delta + PI } else { delta };
                    pending_flip = false;
                    out.push(OpticalElement::PhasePlate {
                        delta: wrap_phase(delta),
                    });
                }
                other => {
                    if pending_flip {
                        out.push(OpticalElement::PhasePlate { delta: PI });
                        pending_flip = false;
                    }
                    out.push(other);
                }
            }
        }
        if pending_flip {
            out.push(OpticalElement::PhasePlate { delta: PI });
        }
        out.retain(|e| !matches!(e, OpticalElement::PhasePlate { delta } if delta.abs() <= NULL_ANGLE));
        ElementSequence {
            elements: out,
            global_phase: self.global_phase,
        }
    }
}

/// `[PhasePlate(α−β), Rotator(θ), PhasePlate(α−γ)]` with global phase `α`.
pub fn synthesize_sequence(f: &UnitaryFactorization) -> ElementSequence {
    ElementSequence {
        elements: alloc::vec![
            OpticalElement::PhasePlate {
                delta: wrap_phase(f.alpha - f.beta)
            },
            OpticalElement::Rotator { theta: f.theta },
            OpticalElement::PhasePlate {
                delta: wrap_phase(f.alpha - f.gamma)
            },
        ],
        global_phase: wrap_phase(f.alpha),
    }
}

/// Which seed amplitude the pump optics suppress.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PumpBranch {
    /// Pump quarter-wave plate lowers the `|HH⟩` emission: `x ≤ 1/√2`.
    LowerHH,
    /// Pump half-wave plate lowers the `|VV⟩` emission: `x ≥ 1/√2`.
    LowerVV,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpSetting {
    pub branch: PumpBranch,
    /// Pump waveplate angle in `[0, π/4]`.
    pub theta_p: f64,
}

/// Seed amplitude `x` produced by a pump setting.
///
/// The suppressed emission amplitude is scaled by `cos2θp` relative to the
/// other one and the pair is renormalized.
pub fn seed_from_pump(p: &PumpSetting) -> Result<f64, OpticsError> {
    if !(0.0..=FRAC_PI_4).contains(&p.theta_p) {
        return Err(OpticsError::PumpAngleOutOfRange(p.theta_p));
    }
    let k = (2.0 * p.theta_p).cos();
    let norm = (1.0 + k * k).sqrt();
    Ok(match p.branch {
        PumpBranch::LowerHH => k / norm,
        PumpBranch::LowerVV => 1.0 / norm,
    })
}

/// Pump setting producing seed amplitude `x`. Ties at `x = 1/√2` go to `LowerVV`.
pub fn pump_for_seed(x: f64) -> Result<PumpSetting, OpticsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(OpticsError::SeedOutOfRange(x));
    }
    if (x - FRAC_1_SQRT_2).abs() <= f64::EPSILON {
        return Ok(PumpSetting {
            branch: PumpBranch::LowerVV,
            theta_p: 0.0,
        });
    }
    let partner = (1.0 - x * x).sqrt();
    let (branch, ratio) = if x < FRAC_1_SQRT_2 {
        (PumpBranch::LowerHH, x / partner)
    } else {
        (PumpBranch::LowerVV, partner / x)
    };
    let theta_p = 0.5 * ratio.clamp(0.0, 1.0).acos();
    Ok(PumpSetting { branch, theta_p })
}
