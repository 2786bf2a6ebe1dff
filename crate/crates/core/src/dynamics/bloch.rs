use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::qops::{DensityMatrix, EnergyBasis, Operator2, C64};

fn pauli(k: usize) -> Operator2 {
    match k {
        0 => Operator2::identity(),
        1 => Operator2::sigma_x(),
        2 => Operator2::sigma_y(),
        _ => Operator2::sigma_z(),
    }
}

fn coefficients(x: &Operator2) -> [C64; 4] {
    std::array::from_fn(|k| (pauli(k) * *x).trace())
}

fn from_coefficients(c: &[C64; 4]) -> Operator2 {
    (0..4).fold(Operator2::zero(), |acc, k| {
        acc + pauli(k).cscale(c[k] * 0.5)
    })
}

/// A linear map on qubit operators written in the Pauli coefficient basis.
///
/// An operator `X = ½ Σ_k c_k σ_k` (with `σ_0 = I`) is carried as the
/// 4-vector `c`; a density matrix is `(1, b_x, b_y, b_z)` with `b` its Bloch
/// vector. Hermiticity-preserving maps are real in this basis, and
/// trace-preserving maps have first row `(1, 0, 0, 0)`. The same type holds
/// generators, whose first row is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochMap(pub Matrix4<f64>);

impl BlochMap {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Matrix of a Hermiticity-preserving linear map given as a closure.
    pub fn from_operator_map(f: impl Fn(&Operator2) -> Operator2) -> Self {
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            let image = f(&pauli(k).scale(0.5));
            let c = coefficients(&image);
            for j in 0..4 {
                m[(j, k)] = c[j].re;
            }
        }
        Self(m)
    }

    /// `X ↦ U X U†`.
    pub fn from_unitary(u: &Operator2) -> Self {
        Self::from_operator_map(|x| u.conjugate(x))
    }

    /// Full dephasing in `basis`: the Bloch vector is projected on the basis axis.
    pub fn dephasing(basis: &EnergyBasis) -> Self {
        Self::from_operator_map(|x| basis.dephase(x))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Self {
        Self(next.0 * self.0)
    }

    /// `e^{τ G}` for a generator `G`.
    pub fn exp_generator(&self, tau: f64) -> Self {
        if tau == 0.0 {
            return Self::identity();
        }
        Self((self.0 * tau).exp())
    }

    pub fn apply_bloch(&self, b: [f64; 3]) -> [f64; 3] {
        let v = self.0 * Vector4::new(1.0, b[0], b[1], b[2]);
        [v[1], v[2], v[3]]
    }

    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_bloch(self.apply_bloch(rho.bloch()))
    }

    /// Applies the linear map to an arbitrary (not necessarily Hermitian) operator.
    pub fn apply_operator(&self, x: &Operator2) -> Operator2 {
        let c = coefficients(x);
        let out: [C64; 4] =
            std::array::from_fn(|j| (0..4).map(|k| c[k] * self.0[(j, k)]).sum::<C64>());
        from_coefficients(&out)
    }

    /// Largest deviation of the first row from `(1, 0, 0, 0)`.
    pub fn trace_defect(&self) -> f64 {
        let row = self.0.row(0);
        (row[0] - 1.0)
            .abs()
            .max(row[1].abs())
            .max(row[2].abs())
            .max(row[3].abs())
    }

    /// The 3×3 linear part `A` and the translation `t` of `b ↦ A b + t`.
    pub fn affine_parts(&self) -> (Matrix3<f64>, Vector3<f64>) {
        let a = self.0.fixed_view::<3, 3>(1, 1).into_owned();
        let t = self.0.fixed_view::<3, 1>(1, 0).into_owned();
        (a, t)
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`.
    pub fn choi(&self) -> Matrix4<C64> {
        let mut choi = Matrix4::<C64>::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut eij = Operator2::zero();
                eij.m[i][j] = C64::new(1.0, 0.0);
                let img = self.apply_operator(&eij);
                for a in 0..2 {
                    for b in 0..2 {
                        choi[(2 * i + a, 2 * j + b)] = img.m[a][b];
                    }
                }
            }
        }
        choi
    }

    /// Smallest eigenvalue of the (Hermitian) Choi matrix.
    pub fn choi_min_eigenvalue(&self) -> f64 {
        let c = self.choi();
        let h = (c + c.adjoint()) * C64::new(0.5, 0.0);
        h.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Fixed point of the affine map `b = A b + t`, if `I − A` is invertible.
    pub fn fixed_point(&self) -> Option<[f64; 3]> {
        let (a, t) = self.affine_parts();
        let b = (Matrix3::identity() - a).lu().solve(&t)?;
        Some([b[0], b[1], b[2]])
    }

    /// Stationary point of a generator, `A b + t = 0`.
    pub fn generator_fixed_point(&self) -> Option<[f64; 3]> {
        let (a, t) = self.affine_parts();
        let b = a.lu().solve(&(-t))?;
        Some([b[0], b[1], b[2]])
    }
}

/// Matrix of `ρ ↦ −(i/ħ)[H, ρ] + Σ_k γ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`.
pub fn lindblad_generator(h: &Operator2, hbar: f64, jumps: &[(f64, Operator2)]) -> BlochMap {
    BlochMap::from_operator_map(|rho| {
        let unitary = h.commutator(rho).cscale(C64::new(0.0, -1.0 / hbar));
        jumps.iter().fold(unitary, |acc, (rate, l)| {
            let ld = l.dagger();
            let ldl = ld * *l;
            acc + (*l * *rho * ld - ldl.anticommutator(rho).scale(0.5)).scale(*rate)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::{eig_herm, unitary_exp};

    #[test]
    fn unitary_maps_rotate_bloch_vectors() {
        // exp(−iθσ_z/2) rotates x towards y by θ
        let u = unitary_exp(&Operator2::sigma_z().scale(0.5), 0.3);
        let m = BlochMap::from_unitary(&u);
        let b = m.apply_bloch([1.0, 0.0, 0.0]);
        assert!((b[0] - 0.3f64.cos()).abs() < 1e-15);
        assert!((b[1] - 0.3f64.sin()).abs() < 1e-15);
        assert!(m.trace_defect() < 1e-15);
        assert!(m.choi_min_eigenvalue() > -1e-14);
    }

    #[test]
    fn dephasing_projects_on_the_axis() {
        let basis = eig_herm(&Operator2::sigma_x()).unwrap();
        let m = BlochMap::dephasing(&basis);
        let b = m.apply_bloch([0.3, 0.4, -0.5]);
        assert!((b[0] - 0.3).abs() < 1e-15 && b[1].abs() < 1e-15 && b[2].abs() < 1e-15);
    }

    #[test]
    fn operator_round_trip_through_coefficients() {
        let x = Operator2::new([
            [C64::new(0.1, 0.2), C64::new(-0.3, 0.0)],
            [C64::new(0.0, 1.0), C64::new(2.0, -1.0)],
        ]);
        let back = BlochMap::identity().apply_operator(&x);
        assert!((back - x).max_norm() < 1e-15);
    }

    #[test]
    fn amplitude_damping_generator_has_ground_state_fixed_point() {
        let g = lindblad_generator(&Operator2::zero(), 1.0, &[(1.0, Operator2::sigma_minus())]);
        assert!(g.0.row(0).iter().all(|v| v.abs() < 1e-15));
        let b = g.generator_fixed_point().unwrap();
        assert!((b[2] + 1.0).abs() < 1e-15);
    }
}
