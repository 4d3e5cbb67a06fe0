//! Small complex linear algebra for two-qubit pure states.
//!
//! Everything here works on fixed 2×2 matrices and 4-component vectors, so
//! all routines are closed form and allocation free.
//!
//! The SVD follows the transpose convention `A = U·D·Wᵀ` (plain transpose,
//! not the adjoint). With that convention a two-qubit state whose amplitude
//! matrix is `Ψ = U·D·Wᵀ` can be written as `(U ⊗ W)(d₁|00⟩ + d₂|11⟩)`.

use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Tolerance used for all exactness checks on closed-form 2×2 arithmetic.
pub const EXACT_TOL: f64 = 1e-12;

/// Entries below this modulus are treated as structural zeros when fixing phases.
pub(crate) const ZERO_MODULUS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QmathError {
    #[error("matrix or vector has a non-finite entry")]
    NonFinite,
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
}

#[inline]
pub(crate) const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub(crate) fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    let mut t = theta % TAU;
    if t <= -PI {
        t += TAU;
    } else if t > PI {
        t -= TAU;
    }
    t
}

/// A 2×2 complex matrix, indexed `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2 {
    m: [[C64; 2]; 2],
}

impl ComplexMatrix2 {
    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn new(rows: [[C64; 2]; 2]) -> Result<Self, QmathError> {
        let m = Self { m: rows };
        if m.is_finite() {
            Ok(m)
        } else {
            Err(QmathError::NonFinite)
        }
    }

    /// Real-valued matrix.
    pub fn from_real(rows: [[f64; 2]; 2]) -> Result<Self, QmathError> {
        Self::new([
            [c(rows[0][0], 0.0), c(rows[0][1], 0.0)],
            [c(rows[1][0], 0.0), c(rows[1][1], 0.0)],
        ])
    }

    pub(crate) const fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        Self { m: rows }
    }

    pub const fn identity() -> Self {
        Self::from_rows([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
    }

    pub const fn zero() -> Self {
        Self::from_rows([[c(0.0, 0.0); 2]; 2])
    }

    pub const fn diag(a: C64, b: C64) -> Self {
        Self::from_rows([[a, c(0.0, 0.0)], [c(0.0, 0.0), b]])
    }

    /// Builds a matrix from its two columns.
    pub const fn from_columns(c0: [C64; 2], c1: [C64; 2]) -> Self {
        Self::from_rows([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn rows(&self) -> [[C64; 2]; 2] {
        self.m
    }

    pub fn column(&self, col: usize) -> [C64; 2] {
        [self.m[0][col], self.m[1][col]]
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self::from_rows([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let m = &self.m;
        Self::from_rows([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `‖a†a − I‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        is_unitary(self, tol)
    }

    /// True when both off-diagonal entries vanish within `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.m[0][1].norm() <= tol && self.m[1][0].norm() <= tol
    }
}

impl Mul for ComplexMatrix2 {
    type Output = ComplexMatrix2;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::from_rows([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for ComplexMatrix2 {
    type Output = ComplexMatrix2;

    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::from_rows([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for ComplexMatrix2 {
    type Output = ComplexMatrix2;

    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::from_rows([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

/// True iff `‖a†a − I‖_max ≤ tol`.
pub fn is_unitary(a: &ComplexMatrix2, tol: f64) -> bool {
    a.unitarity_deviation() <= tol
}

/// Result of [`svd2`]: `a = u · diag(d1, d2) · wᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd2Result {
    pub u: ComplexMatrix2,
    pub d1: f64,
    pub d2: f64,
    pub w: ComplexMatrix2,
}

impl Svd2Result {
    /// `u · diag(d1, d2) · wᵀ`.
    pub fn reconstruct(&self) -> ComplexMatrix2 {
        self.u * ComplexMatrix2::diag(c(self.d1, 0.0), c(self.d2, 0.0)) * self.w.transpose()
    }
}

fn norm2(v: [C64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn scale2(v: [C64; 2], s: C64) -> [C64; 2] {
    [v[0] * s, v[1] * s]
}

/// Unit vector orthogonal to the unit vector `v`.
fn complement(v: [C64; 2]) -> [C64; 2] {
    [-v[1].conj(), v[0].conj()]
}

/// Unit eigenvector for the larger eigenvalue of the Hermitian matrix
/// `[[a, b], [b*, d]]`. A (numerically) scalar matrix yields `(1, 0)`.
fn top_eigenvector(a: f64, b: C64, d: f64) -> [C64; 2] {
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    let scale = a.abs() + d.abs();
    if radius <= 4.0 * f64::EPSILON * scale || radius == 0.0 {
        return [c(1.0, 0.0), c(0.0, 0.0)];
    }
    let lambda = 0.5 * (a + d) + radius;
    // Two algebraically equivalent forms; the longer one is better conditioned.
    let first = [b, c(lambda - a, 0.0)];
    let second = [c(lambda - d, 0.0), b.conj()];
    let pick = if norm2(first) >= norm2(second) {
        first
    } else {
        second
    };
    scale2(pick, c(1.0 / norm2(pick), 0.0))
}

/// First entry of `v` with modulus above the structural-zero threshold.
fn leading_phase(v: [C64; 2]) -> C64 {
    v.iter()
        .find(|z| z.norm() > ZERO_MODULUS)
        .map(|z| z / z.norm())
        .unwrap_or(c(1.0, 0.0))
}

/// Singular value decomposition `a = u · diag(d1, d2) · wᵀ` with `d1 ≥ d2 ≥ 0`.
///
/// Output is canonical: each column of `u` has its first non-negligible entry
/// real positive, the compensating phase sitting in the matching column of `w`.
/// Degenerate singular values pick the standard basis for the right factor.
pub fn svd2(a: &ComplexMatrix2) -> Result<Svd2Result, QmathError> {
    if !a.is_finite() {
        return Err(QmathError::NonFinite);
    }
    // Right singular vectors from the Hermitian a†a.
    let h = a.adjoint() * *a;
    let v1 = top_eigenvector(h.get(0, 0).re, h.get(0, 1), h.get(1, 1).re);
    let v2 = complement(v1);

    let av1 = a.apply(v1);
    let mut d1 = norm2(av1);
    let (mut u1, mut u2, mut d2);
    if d1 == 0.0 {
        return Ok(Svd2Result {
            u: ComplexMatrix2::identity(),
            d1: 0.0,
            d2: 0.0,
            w: ComplexMatrix2::identity(),
        });
    }
    u1 = scale2(av1, c(1.0 / d1, 0.0));
    u2 = complement(u1);
    // u2†·a·v2 carries the second singular value and its phase.
    let av2 = a.apply(v2);
    let s2 = u2[0].conj() * av2[0] + u2[1].conj() * av2[1];
    d2 = s2.norm();
    if d2 > 0.0 {
        u2 = scale2(u2, s2 / d2);
    }
    let (mut v1, mut v2) = (v1, v2);
    if d2 > d1 {
        core::mem::swap(&mut d1, &mut d2);
        core::mem::swap(&mut u1, &mut u2);
        core::mem::swap(&mut v1, &mut v2);
    }

    let p1 = leading_phase(u1).conj();
    let p2 = leading_phase(u2).conj();
    let u1 = scale2(u1, p1);
    let u2 = scale2(u2, p2);
    // a = Σ d_k u_k v_k†: rescaling u_k by p_k needs v_k rescaled by p_k too.
    let v1 = scale2(v1, p1);
    let v2 = scale2(v2, p2);

    let u = ComplexMatrix2::from_columns(u1, u2);
    // wᵀ = V† means w = conj(V).
    let w = ComplexMatrix2::from_columns(v1, v2).conj();
    Ok(Svd2Result { u, d1, d2, w })
}

/// Four amplitudes of a two-qubit state in the order
/// `(|00⟩, |11⟩, |01⟩, |10⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub const fn new(a00: C64, a11: C64, a01: C64, a10: C64) -> Self {
        Self([a00, a11, a01, a10])
    }

    pub const fn zero() -> Self {
        Self([c(0.0, 0.0); 4])
    }

    /// Slot of `|ij⟩` in the storage order.
    #[inline]
    const fn slot(i: usize, j: usize) -> usize {
        match (i, j) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            _ => 3,
        }
    }

    /// Amplitude of `|ij⟩`.
    #[inline]
    pub fn amp(&self, i: usize, j: usize) -> C64 {
        self.0[Self::slot(i, j)]
    }

    #[inline]
    pub fn set_amp(&mut self, i: usize, j: usize, value: C64) {
        self.0[Self::slot(i, j)] = value;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `(u ⊗ w) v`, with `u` acting on the first qubit.
pub fn tensor_apply(u: &ComplexMatrix2, w: &ComplexMatrix2, v: &FourVector) -> FourVector {
    let mut out = FourVector::zero();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = c(0.0, 0.0);
            for k in 0..2 {
                for l in 0..2 {
                    acc += u.get(i, k) * w.get(j, l) * v.amp(k, l);
                }
            }
            out.set_amp(i, j, acc);
        }
    }
    out
}

/// Schmidt coefficients `(s1, s2)`, descending, of a normalized two-qubit state.
pub fn schmidt_coefficients(v: &FourVector) -> Result<(f64, f64), QmathError> {
    if !v.is_finite() {
        return Err(QmathError::NonFinite);
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(QmathError::NotNormalized { norm });
    }
    let psi = ComplexMatrix2::from_rows([[v.amp(0, 0), v.amp(0, 1)], [v.amp(1, 0), v.amp(1, 1)]]);
    let svd = svd2(&psi)?;
    Ok((svd.d1, svd.d2))
}
