//! Exact 2×2 complex operator algebra.
//!
//! Everything here works through the Pauli decomposition `A = a0·I + a·σ`,
//! which gives closed forms for the exponential and the Hermitian
//! eigendecomposition. No iterative linear algebra is involved.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{OttoError, Result};
use num_complex::Complex64;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Hermiticity tolerance accepted by [`eig_herm`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Tolerance used when validating density matrices.
pub const STATE_TOL: f64 = 1e-12;

/// A 2×2 complex matrix, stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Operator2 {
    pub m: [[C64; 2]; 2],
}

impl fmt::Debug for Operator2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl Operator2 {
    pub const fn new(m: [[C64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new([
            [C64::new(m[0][0], 0.0), C64::new(m[0][1], 0.0)],
            [C64::new(m[1][0], 0.0), C64::new(m[1][1], 0.0)],
        ])
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn sigma_x() -> Self {
        Self::new([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_y() -> Self {
        Self::new([[ZERO, -I], [I, ZERO]])
    }

    pub const fn sigma_z() -> Self {
        Self::new([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]])
    }

    /// σ₊ = (σx + iσy)/2 = |↑⟩⟨↓|.
    pub const fn sigma_plus() -> Self {
        Self::new([[ZERO, ONE], [ZERO, ZERO]])
    }

    /// σ₋ = (σx − iσy)/2 = |↓⟩⟨↑|.
    pub const fn sigma_minus() -> Self {
        Self::new([[ZERO, ZERO], [ONE, ZERO]])
    }

    /// `a0·I + a·σ` with complex coefficients.
    pub fn from_pauli(a0: C64, a: [C64; 3]) -> Self {
        Self::new([[a0 + a[2], a[0] - I * a[1]], [a[0] + I * a[1], a0 - a[2]]])
    }

    /// Coefficients `(a0, [ax, ay, az])` with `A = a0·I + a·σ`.
    pub fn pauli_coefficients(&self) -> (C64, [C64; 3]) {
        let m = &self.m;
        let a0 = (m[0][0] + m[1][1]) * 0.5;
        let az = (m[0][0] - m[1][1]) * 0.5;
        let ax = (m[0][1] + m[1][0]) * 0.5;
        let ay = (m[1][0] - m[0][1]) * (-I * 0.5);
        (a0, [ax, ay, az])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, s: f64) -> Self {
        self.cscale(C64::new(s, 0.0))
    }

    pub fn cscale(&self, s: C64) -> Self {
        let m = &self.m;
        Self::new([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (*self - self.dagger()).max_norm() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.dagger() - Self::identity()).max_norm() <= tol
    }

    /// `⟨bra|A|ket⟩`.
    pub fn element(&self, bra: &Ket, ket: &Ket) -> C64 {
        let av = self.apply(ket);
        bra.0[0].conj() * av.0[0] + bra.0[1].conj() * av.0[1]
    }

    pub fn apply(&self, ket: &Ket) -> Ket {
        let m = &self.m;
        let v = &ket.0;
        Ket([
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ])
    }

    /// `A X A†`.
    pub fn conjugate(&self, x: &Self) -> Self {
        *self * *x * self.dagger()
    }
}

impl Add for Operator2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Operator2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Operator2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Operator2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::new([
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

/// A column vector in C².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket(pub [C64; 2]);

impl Ket {
    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    pub fn inner(&self, other: &Ket) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Ket) -> Operator2 {
        let (a, b) = (&self.0, &other.0);
        Operator2::new([
            [a[0] * b[0].conj(), a[0] * b[1].conj()],
            [a[1] * b[0].conj(), a[1] * b[1].conj()],
        ])
    }

    pub fn projector(&self) -> Operator2 {
        self.outer(self)
    }
}

/// Spectral decomposition of a Hermitian 2×2 operator.
///
/// Index 0 is the lower level (ground, `g`), index 1 the upper level
/// (excited, `e`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBasis {
    pub values: [f64; 2],
    pub vectors: [Ket; 2],
}

impl EnergyBasis {
    pub fn ground(&self) -> &Ket {
        &self.vectors[0]
    }

    pub fn excited(&self) -> &Ket {
        &self.vectors[1]
    }

    /// Populations `⟨n|ρ|n⟩`, ground first.
    pub fn populations(&self, rho: &Operator2) -> [f64; 2] {
        [
            rho.element(&self.vectors[0], &self.vectors[0]).re,
            rho.element(&self.vectors[1], &self.vectors[1]).re,
        ]
    }

    /// `Σ_n Π_n A Π_n`.
    pub fn dephase(&self, a: &Operator2) -> Operator2 {
        self.vectors.iter().fold(Operator2::zero(), |acc, v| {
            let p = v.projector();
            acc + p * *a * p
        })
    }

    /// `Σ_n f(λ_n) |n⟩⟨n|`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Operator2 {
        self.vectors
            .iter()
            .zip(self.values)
            .fold(Operator2::zero(), |acc, (v, l)| {
                acc + v.projector().scale(f(l))
            })
    }
}

/// Closed-form matrix exponential.
///
/// With `A = a0·I + a·σ` and `s² = a·a`, `e^A = e^{a0}[cosh(s)·I + sinh(s)/s · a·σ]`.
pub fn mat_exp(a: &Operator2) -> Operator2 {
    let (a0, v) = a.pauli_coefficients();
    let s2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    let (ch, shc) = if s2.norm() < 1e-8 {
        // Taylor tails below 1e-24 relative are dropped.
        let ch = ONE + s2 * 0.5 + s2 * s2 / 24.0;
        let shc = ONE + s2 / 6.0 + s2 * s2 / 120.0;
        (ch, shc)
    } else {
        let s = s2.sqrt();
        (s.cosh(), s.sinh() / s)
    };
    let pre = a0.exp();
    Operator2::from_pauli(
        pre * ch,
        [pre * shc * v[0], pre * shc * v[1], pre * shc * v[2]],
    )
}

/// `exp(−i·H·t)` for Hermitian `H`, written directly in terms of the
/// rotation angle so the result is unitary to rounding.
pub fn unitary_exp(h: &Operator2, t: f64) -> Operator2 {
    let (h0, v) = h.pauli_coefficients();
    let n = [v[0].re, v[1].re, v[2].re];
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let theta = norm * t;
    let phase = C64::new(0.0, -h0.re * t).exp();
    let (c, s) = (theta.cos(), theta.sin());
    let axis = if norm > 0.0 {
        [n[0] / norm, n[1] / norm, n[2] / norm]
    } else {
        [0.0, 0.0, 0.0]
    };
    let k = C64::new(0.0, -s);
    Operator2::from_pauli(
        phase * c,
        [
            phase * k * axis[0],
            phase * k * axis[1],
            phase * k * axis[2],
        ],
    )
}

/// Eigendecomposition of a Hermitian 2×2 operator, eigenvalues ascending.
pub fn eig_herm(a: &Operator2) -> Result<EnergyBasis> {
    if !a.is_finite() || !a.is_hermitian(HERMITIAN_TOL) {
        return Err(OttoError::NotHermitian {
            deviation: (*a - a.dagger()).max_norm(),
        });
    }
    let (a0, v) = a.pauli_coefficients();
    let (x, y, z) = (v[0].re, v[1].re, v[2].re);
    let r = (x * x + y * y + z * z).sqrt();
    let values = [a0.re - r, a0.re + r];
    if r == 0.0 {
        return Ok(EnergyBasis {
            values,
            vectors: [Ket([ZERO, ONE]), Ket([ONE, ZERO])],
        });
    }
    // Upper eigenvector of n·σ, choosing the better-conditioned of the two
    // equivalent closed forms.
    let up = if z >= 0.0 {
        Ket([C64::new(r + z, 0.0), C64::new(x, y)])
    } else {
        Ket([C64::new(x, -y), C64::new(r - z, 0.0)])
    };
    let nrm = up.norm();
    let up = Ket([up.0[0] / nrm, up.0[1] / nrm]);
    let down = Ket([-up.0[1].conj(), up.0[0].conj()]);
    Ok(EnergyBasis {
        values,
        vectors: [down, up],
    })
}

/// Nearest unitary in Frobenius norm, `V (V†V)^{-1/2}`.
pub fn polar_unitary(v: &Operator2) -> Operator2 {
    let g = v.dagger() * *v;
    // g is Hermitian positive definite for invertible v.
    let basis = eig_herm(&((g + g.dagger()).scale(0.5))).expect("Gram matrix is Hermitian");
    let inv_sqrt = basis.spectral_map(|l| 1.0 / l.sqrt());
    *v * inv_sqrt
}

/// A qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Operator2);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity at [`STATE_TOL`].
    pub fn new(op: Operator2) -> Result<Self> {
        let rho = Self(op);
        rho.validate(STATE_TOL)?;
        Ok(rho)
    }

    /// Wraps an operator without checking the state invariants.
    pub fn new_unchecked(op: Operator2) -> Self {
        Self(op)
    }

    /// `(I + b·σ)/2`.
    pub fn from_bloch(b: [f64; 3]) -> Self {
        Self(Operator2::from_pauli(
            C64::new(0.5, 0.0),
            [
                C64::new(0.5 * b[0], 0.0),
                C64::new(0.5 * b[1], 0.0),
                C64::new(0.5 * b[2], 0.0),
            ],
        ))
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch([0.0; 3])
    }

    pub fn pure(ket: &Ket) -> Self {
        Self(ket.projector())
    }

    pub fn bloch(&self) -> [f64; 3] {
        let (_, v) = self.0.pauli_coefficients();
        [2.0 * v[0].re, 2.0 * v[1].re, 2.0 * v[2].re]
    }

    pub fn op(&self) -> &Operator2 {
        &self.0
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let op = &self.0;
        let fail = |reason: &str| OttoError::InvalidState(reason.to_string());
        if !op.is_finite() {
            return Err(fail("non-finite entry"));
        }
        if !op.is_hermitian(tol) {
            return Err(fail("not Hermitian"));
        }
        if (op.trace() - ONE).norm() > tol {
            return Err(fail("trace differs from one"));
        }
        let basis = eig_herm(op)?;
        if basis.values[0] < -tol {
            return Err(fail("negative eigenvalue"));
        }
        Ok(())
    }

    /// `Tr(ρ A)`, real part.
    pub fn expect(&self, a: &Operator2) -> f64 {
        (self.0 * *a).trace().re
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.hermitian_basis().values
    }

    fn hermitian_basis(&self) -> EnergyBasis {
        let h = (self.0 + self.0.dagger()).scale(0.5);
        eig_herm(&h).expect("symmetrised operator is Hermitian")
    }

    pub fn evolve(&self, u: &Operator2) -> Self {
        Self(u.conjugate(&self.0))
    }

    pub fn dephase(&self, basis: &EnergyBasis) -> Self {
        dephasing_map(self, basis)
    }
}

/// `Σ_n Π_n ρ Π_n` in the given basis.
pub fn dephasing_map(rho: &DensityMatrix, basis: &EnergyBasis) -> DensityMatrix {
    DensityMatrix(basis.dephase(rho.op()))
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let d = *rho.op() - *sigma.op();
    let d = (d + d.dagger()).scale(0.5);
    let basis = eig_herm(&d).expect("difference of Hermitian operators");
    0.5 * (basis.values[0].abs() + basis.values[1].abs())
}

fn entropy_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.ln()
    }
}

/// `S(ρ) = −Tr ρ ln ρ` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues().iter().map(|&p| entropy_term(p)).sum()
}

/// `D(ρ‖σ) = Tr ρ (ln ρ − ln σ)` in nats; `+∞` when the support of ρ is not
/// contained in that of σ.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let rb = rho.hermitian_basis();
    let sb = sigma.hermitian_basis();
    let mut d = -von_neumann_entropy(rho);
    for (p, v) in rb.values.iter().zip(&rb.vectors) {
        if *p <= 0.0 {
            continue;
        }
        for (q, w) in sb.values.iter().zip(&sb.vectors) {
            let overlap = v.inner(w).norm_sqr();
            if overlap * p <= 0.0 {
                continue;
            }
            if *q <= 0.0 {
                return f64::INFINITY;
            }
            d -= p * overlap * q.ln();
        }
    }
    d.max(0.0)
}

/// Relative entropy of coherence `S(E(ρ)) − S(ρ)` in the given basis.
pub fn coherence(rho: &DensityMatrix, basis: &EnergyBasis) -> f64 {
    (von_neumann_entropy(&dephasing_map(rho, basis)) - von_neumann_entropy(rho)).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, LN_2};

    fn close(a: &Operator2, b: &Operator2, tol: f64) -> bool {
        (*a - *b).max_norm() <= tol
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert!(close(
            &mat_exp(&Operator2::zero()),
            &Operator2::identity(),
            0.0
        ));
    }

    #[test]
    fn exp_of_quarter_turn_about_x() {
        let a = Operator2::sigma_x().cscale(C64::new(0.0, -FRAC_PI_2));
        let want = Operator2::sigma_x().cscale(-I);
        assert!(close(&mat_exp(&a), &want, 1e-15));
    }

    #[test]
    fn exp_of_lowering_minus_raising_is_rotation() {
        let r = 0.5;
        let a = (Operator2::sigma_minus() - Operator2::sigma_plus()).scale(r);
        let want = Operator2::from_real([[r.cos(), -r.sin()], [r.sin(), r.cos()]]);
        assert!(close(&mat_exp(&a), &want, 1e-15));
    }

    #[test]
    fn exp_handles_nilpotent_input() {
        // σ₊ squares to zero, so e^{σ₊} = I + σ₊.
        let got = mat_exp(&Operator2::sigma_plus());
        assert!(close(
            &got,
            &(Operator2::identity() + Operator2::sigma_plus()),
            1e-15
        ));
    }

    #[test]
    fn unitary_exp_matches_general_exponential() {
        let h = Operator2::from_pauli(c(0.3), [c(0.7), c(-0.2), c(1.1)]);
        let t = 2.7;
        let a = h.cscale(C64::new(0.0, -t));
        assert!(close(&unitary_exp(&h, t), &mat_exp(&a), 1e-13));
    }

    #[test]
    fn eig_of_pauli_z() {
        let b = eig_herm(&Operator2::sigma_z()).unwrap();
        assert_eq!(b.values, [-1.0, 1.0]);
        assert!((b.ground().0[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_of_pauli_x() {
        let b = eig_herm(&Operator2::sigma_x()).unwrap();
        assert_eq!(b.values, [-1.0, 1.0]);
        // (1, −1)/√2 and (1, 1)/√2 up to phase
        let g = Ket([c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)]);
        let e = Ket([c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]);
        assert!((b.ground().inner(&g).norm() - 1.0).abs() < 1e-15);
        assert!((b.excited().inner(&e).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_of_diagonal_axis() {
        let a = (Operator2::sigma_x() + Operator2::sigma_z()).scale(FRAC_1_SQRT_2);
        let b = eig_herm(&a).unwrap();
        assert!((b.values[0] + 1.0).abs() < 1e-15);
        assert!((b.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let err = eig_herm(&Operator2::sigma_plus()).unwrap_err();
        assert!(matches!(err, OttoError::NotHermitian { .. }));
    }

    #[test]
    fn trace_distance_examples() {
        let rho = DensityMatrix::from_bloch([0.3, -0.2, 0.1]);
        assert!(trace_distance(&rho, &rho).abs() < 1e-16);
        let up = DensityMatrix::from_bloch([0.0, 0.0, 1.0]);
        let down = DensityMatrix::from_bloch([0.0, 0.0, -1.0]);
        assert!((trace_distance(&up, &down) - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed();
        let diag = DensityMatrix::new(Operator2::from_real([[0.75, 0.0], [0.0, 0.25]])).unwrap();
        assert!((trace_distance(&mixed, &diag) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityMatrix::from_bloch([0.6, 0.0, 0.8]);
        assert!(von_neumann_entropy(&pure).abs() < 1e-12);
        assert!((von_neumann_entropy(&DensityMatrix::maximally_mixed()) - LN_2).abs() < 1e-15);
        let d = DensityMatrix::new(Operator2::from_real([[0.8, 0.0], [0.0, 0.2]])).unwrap();
        // −0.8 ln 0.8 − 0.2 ln 0.2
        let want = 0.500_402_423_538_188_3;
        assert!((von_neumann_entropy(&d) - want).abs() < 1e-15);
    }

    #[test]
    fn dephasing_examples() {
        let zb = eig_herm(&Operator2::sigma_z()).unwrap();
        let diag = DensityMatrix::from_bloch([0.0, 0.0, 0.4]);
        assert!(close(dephasing_map(&diag, &zb).op(), diag.op(), 1e-16));
        let plus = DensityMatrix::from_bloch([1.0, 0.0, 0.0]);
        let got = dephasing_map(&plus, &zb);
        assert!(close(
            got.op(),
            DensityMatrix::maximally_mixed().op(),
            1e-16
        ));
        assert!(coherence(&got, &zb).abs() < 1e-15);
    }

    #[test]
    fn relative_entropy_of_state_with_itself_is_zero() {
        let rho = DensityMatrix::from_bloch([0.2, 0.1, -0.5]);
        assert!(relative_entropy(&rho, &rho).abs() < 1e-14);
        let pure = DensityMatrix::from_bloch([0.0, 0.0, 1.0]);
        assert_eq!(relative_entropy(&rho, &pure), f64::INFINITY);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(Operator2::identity()).is_err());
        assert!(DensityMatrix::new(Operator2::from_real([[1.2, 0.0], [0.0, -0.2]])).is_err());
        assert!(DensityMatrix::new(Operator2::from_real([[0.5, 0.5], [0.5, 0.5]])).is_ok());
    }

    #[test]
    fn polar_projection_restores_unitarity() {
        let u = unitary_exp(&Operator2::sigma_y(), 0.4);
        let v = u + Operator2::from_real([[1e-7, -2e-7], [3e-8, 0.0]]);
        let p = polar_unitary(&v);
        assert!(p.is_unitary(1e-15));
        assert!((p - u).max_norm() < 1e-6);
    }

    fn bloch_strategy() -> impl Strategy<Value = [f64; 3]> {
        (
            0.0..1.0f64,
            0.0..std::f64::consts::PI,
            0.0..std::f64::consts::TAU,
        )
            .prop_map(|(r, th, ph)| {
                [
                    r * th.sin() * ph.cos(),
                    r * th.sin() * ph.sin(),
                    r * th.cos(),
                ]
            })
    }

    fn coeff() -> impl Strategy<Value = f64> {
        -3.0..3.0f64
    }

    proptest! {
        #[test]
        fn anti_hermitian_exponentials_are_unitary(
            a0 in coeff(), ax in coeff(), ay in coeff(), az in coeff()
        ) {
            let h = Operator2::from_pauli(c(a0), [c(ax), c(ay), c(az)]);
            let u = mat_exp(&h.cscale(-I));
            prop_assert!(u.is_unitary(1e-12));
        }

        #[test]
        fn eigendecomposition_reconstructs(
            a0 in coeff(), ax in coeff(), ay in coeff(), az in coeff()
        ) {
            let h = Operator2::from_pauli(c(a0), [c(ax), c(ay), c(az)]);
            let b = eig_herm(&h).unwrap();
            prop_assert!(b.values[0] <= b.values[1]);
            prop_assert!(b.ground().inner(b.excited()).norm() < 1e-12);
            prop_assert!((b.ground().norm() - 1.0).abs() < 1e-12);
            prop_assert!((b.spectral_map(|l| l) - h).max_norm() < 1e-12);
        }

        #[test]
        fn trace_distance_is_a_metric(
            a in bloch_strategy(), b in bloch_strategy(), c in bloch_strategy()
        ) {
            let (ra, rb, rc) = (
                DensityMatrix::from_bloch(a),
                DensityMatrix::from_bloch(b),
                DensityMatrix::from_bloch(c),
            );
            let ab = trace_distance(&ra, &rb);
            prop_assert!((ab - trace_distance(&rb, &ra)).abs() < 1e-15);
            prop_assert!(ab <= trace_distance(&ra, &rc) + trace_distance(&rc, &rb) + 1e-14);
            prop_assert!((0.0..=1.0 + 1e-15).contains(&ab));
        }

        #[test]
        fn dephasing_is_idempotent(b in bloch_strategy(), axis in bloch_strategy()) {
            let h = Operator2::from_pauli(c(0.0), [c(axis[0] + 0.1), c(axis[1]), c(axis[2])]);
            let basis = eig_herm(&h).unwrap();
            let rho = DensityMatrix::from_bloch(b);
            let once = dephasing_map(&rho, &basis);
            let twice = dephasing_map(&once, &basis);
            prop_assert!((*once.op() - *twice.op()).max_norm() < 1e-15);
            let p0 = basis.populations(rho.op());
            let p1 = basis.populations(once.op());
            prop_assert!((p0[0] - p1[0]).abs() < 1e-15);
        }

        #[test]
        fn entropy_is_bounded(b in bloch_strategy()) {
            let s = von_neumann_entropy(&DensityMatrix::from_bloch(b));
            prop_assert!((0.0..=LN_2 + 1e-15).contains(&s));
        }
    }
}
