use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{OttoError, Result};

use super::cgf::{cgf, cgf_jet, path_moments};
use super::chain::TpmChain;
use super::optimize::{bracket_convex, golden_section};

/// Golden-section tolerance on the dimensionless tilt `s = φ₂ ħω_h`.
pub const TILT_TOL: f64 = 1e-10;

/// Largest `|φ₂ ħω_h|` tried while bracketing.
pub const TILT_LIMIT: f64 = 1e3;

/// Efficiency rate function sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdfCurve {
    pub eta_grid: Vec<f64>,
    pub j_values: Vec<f64>,
    /// Minimising tilt `φ₂*` at each grid point (inverse energy).
    pub phi2_star: Vec<f64>,
    /// Grid efficiency with the smallest `J`.
    pub argmin_eta: f64,
    /// Grid efficiency with the largest `J`.
    pub argmax_eta: f64,
}

impl LdfCurve {
    pub fn argmin_index(&self) -> usize {
        arg_extreme(&self.j_values, |a, b| a < b)
    }

    pub fn argmax_index(&self) -> usize {
        arg_extreme(&self.j_values, |a, b| a > b)
    }
}

fn arg_extreme(v: &[f64], better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if better(x, v[best]) {
            best = i;
        }
    }
    best
}

/// `[lo, hi]·η_C^gen` with `n` evenly spaced points.
pub fn eta_grid(eta_c_gen: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo * eta_c_gen];
    }
    (0..n)
        .map(|i| eta_c_gen * (lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// 400 points over `[−0.2, 1.3]·η_C^gen`.
pub fn default_eta_grid(eta_c_gen: f64) -> Vec<f64> {
    eta_grid(eta_c_gen, -0.2, 1.3, 400)
}

/// Efficiency of the measured chain, `−⟨w_tot⟩/⟨q_h⟩`.
pub fn tpm_efficiency(chain: &TpmChain) -> f64 {
    let m = path_moments(chain);
    -m.mean_w / m.mean_q_h
}

/// `J(η) = −min_{φ₂} φ(φ₂η, φ₂)` and the minimising `φ₂`.
pub fn ldf_point(chain: &TpmChain, eta: f64) -> Result<(f64, f64)> {
    let unit = chain.quanta[1];
    let dir = [eta / unit, 1.0 / unit];
    let f = |s: f64| cgf(chain, s * dir[0], s * dir[1]);
    let df = |s: f64| cgf_jet(chain, [s * dir[0], s * dir[1]], dir).d;
    let (lo, hi) = bracket_convex(df, 1.0, TILT_LIMIT).ok_or(OttoError::BracketFailure { eta })?;
    let min = golden_section(f, lo, hi, TILT_TOL);
    // φ(0, 0) = 0 bounds the minimum from above
    let value = min.value.min(0.0);
    Ok((-value, min.x / unit))
}

/// Evaluates `J` on `grid` in parallel; output order follows the grid.
pub fn ldf(chain: &TpmChain, grid: &[f64]) -> Result<LdfCurve> {
    let points: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&eta| ldf_point(chain, eta))
        .collect::<Result<_>>()?;
    let (j_values, phi2_star): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
    let mut curve = LdfCurve {
        eta_grid: grid.to_vec(),
        j_values,
        phi2_star,
        argmin_eta: f64::NAN,
        argmax_eta: f64::NAN,
    };
    if !grid.is_empty() {
        curve.argmin_eta = grid[curve.argmin_index()];
        curve.argmax_eta = grid[curve.argmax_index()];
    }
    Ok(curve)
}
