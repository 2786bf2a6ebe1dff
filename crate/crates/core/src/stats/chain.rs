use serde::{Deserialize, Serialize};

use crate::dynamics::{BlochMap, LimitCycle};
use crate::qops::{DensityMatrix, EnergyBasis, Operator2};

/// Column-stochastic 2×2 kernel, `k[to][from]`; index 0 is `g`, 1 is `e`.
pub type Kernel = [[f64; 2]; 2];

/// Level indices `(n₀, n₁, n₂, n₃, n₄)` of one measured cycle.
pub type PathLevels = [usize; 5];

/// Two-point-measurement chain of one cycle.
///
/// Energies are measured projectively in the instantaneous eigenbasis at
/// each of the five stroke boundaries. Stroke `k` maps `n_k → n_{k+1}`:
/// compression, hot isochore, expansion, cold isochore.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TpmChain {
    pub kernels: [Kernel; 4],
    /// Level energies `ε(g), ε(e) = ∓ħω/2` at each boundary.
    pub levels: [[f64; 2]; 5],
    /// Stationary distribution of `n₀` under the one-cycle chain.
    pub stationary: [f64; 2],
    /// `ħω_c` and `ħω_h`.
    pub quanta: [f64; 2],
}

/// Stochastic energy exchanges of one path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Increments {
    pub w1: f64,
    pub q_h: f64,
    pub w2: f64,
    pub q_c: f64,
}

impl Increments {
    pub fn w_tot(&self) -> f64 {
        self.w1 + self.w2
    }
}

fn level_pair(hbar_omega: f64) -> [f64; 2] {
    [-0.5 * hbar_omega, 0.5 * hbar_omega]
}

fn unitary_kernel(u: &Operator2, from: &EnergyBasis, to: &EnergyBasis) -> Kernel {
    std::array::from_fn(|m| {
        std::array::from_fn(|n| u.element(&to.vectors[m], &from.vectors[n]).norm_sqr())
    })
}

fn channel_kernel(map: &BlochMap, basis: &EnergyBasis) -> Kernel {
    let mut k = [[0.0; 2]; 2];
    for (n, v) in basis.vectors.iter().enumerate() {
        let out = map.apply(&DensityMatrix::pure(v));
        let p = basis.populations(out.op());
        for m in 0..2 {
            k[m][n] = p[m];
        }
    }
    k
}

fn compose(a: &Kernel, b: &Kernel) -> Kernel {
    // a after b
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

/// Stationary vector of a column-stochastic 2×2 matrix.
pub fn stationary_of(k: &Kernel) -> [f64; 2] {
    // flow balance: k[1][0] p_0 = k[0][1] p_1
    let (up, down) = (k[1][0], k[0][1]);
    if up + down <= 0.0 {
        // the kernel is the identity; any distribution is stationary
        return [0.5, 0.5];
    }
    [down / (up + down), up / (up + down)]
}

impl TpmChain {
    /// Measurement chain of a solved limit cycle.
    pub fn from_cycle(cycle: &LimitCycle) -> Self {
        let cfg = &cycle.cfg;
        let (bc, bh) = (&cycle.basis_c, &cycle.basis_h);
        let kernels = [
            unitary_kernel(&cycle.u_ch.u, bc, bh),
            channel_kernel(&cycle.hot.map, bh),
            unitary_kernel(&cycle.u_hc.u, bh, bc),
            channel_kernel(&cycle.cold.map, bc),
        ];
        let (ec, eh) = (cfg.hbar * cfg.omega_c, cfg.hbar * cfg.omega_h);
        Self::new(kernels, ec, eh)
    }

    /// Chain from explicit kernels; boundary energies alternate `c, h, h, c, c`.
    pub fn new(kernels: [Kernel; 4], hbar_omega_c: f64, hbar_omega_h: f64) -> Self {
        let (c, h) = (level_pair(hbar_omega_c), level_pair(hbar_omega_h));
        let mut chain = Self {
            kernels,
            levels: [c, h, h, c, c],
            stationary: [0.5, 0.5],
            quanta: [hbar_omega_c, hbar_omega_h],
        };
        chain.stationary = stationary_of(&chain.cycle_kernel());
        chain
    }

    /// `P(n₄|n₀)` of one full cycle.
    pub fn cycle_kernel(&self) -> Kernel {
        let k = &self.kernels;
        compose(&k[3], &compose(&k[2], &compose(&k[1], &k[0])))
    }

    /// Probability of the transitions `n₀ → … → n₄` given `n₀`.
    pub fn conditional_probability(&self, p: &PathLevels) -> f64 {
        (0..4).map(|k| self.kernels[k][p[k + 1]][p[k]]).product()
    }

    pub fn increments(&self, p: &PathLevels) -> Increments {
        let e = |k: usize| self.levels[k][p[k]];
        Increments {
            w1: e(1) - e(0),
            q_h: e(2) - e(1),
            w2: e(3) - e(2),
            q_c: e(4) - e(3),
        }
    }

    /// All 32 paths with their stationary probabilities.
    pub fn paths(&self) -> Vec<(PathLevels, f64)> {
        (0..32usize)
            .map(|bits| {
                let p: PathLevels = std::array::from_fn(|k| (bits >> (4 - k)) & 1);
                let prob = self.stationary[p[0]] * self.conditional_probability(&p);
                (p, prob)
            })
            .collect()
    }

    /// Largest deviation of any kernel column sum from one.
    pub fn stochasticity_defect(&self) -> f64 {
        self.kernels
            .iter()
            .flat_map(|k| (0..2).map(move |j| (k[0][j] + k[1][j] - 1.0).abs()))
            .fold(0.0, f64::max)
    }
}
