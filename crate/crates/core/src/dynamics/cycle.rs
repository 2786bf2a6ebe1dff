use nalgebra::Matrix3;

use crate::error::{OttoError, Result};
use crate::model::{EngineConfig, Stroke};
use crate::qops::{eig_herm, trace_distance, DensityMatrix, EnergyBasis};

use super::bloch::BlochMap;
use super::channel::{isochore_channel, Bath, IsochoreChannel};
use super::propagator::{build_propagator, Propagator};

/// Residual accepted for the limit-cycle fixed point (trace distance).
pub const LIMIT_CYCLE_TOL: f64 = 1e-12;

/// Iteration cap for the power-iteration fallback.
pub const MAX_CYCLE_ITERATIONS: usize = 1_000_000;

/// States at the stroke boundaries: `ρ_{t0}` before compression, `ρ_{t1}`
/// before the hot isochore, `ρ_{t2}` before expansion, `ρ_{t3}` before the
/// cold isochore and `ρ_end` after it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleState {
    pub rho_t0: DensityMatrix,
    pub rho_t1: DensityMatrix,
    pub rho_t2: DensityMatrix,
    pub rho_t3: DensityMatrix,
    pub rho_end: DensityMatrix,
}

/// Everything needed to evaluate one cycle in its periodic steady state.
#[derive(Debug, Clone)]
pub struct LimitCycle {
    pub cfg: EngineConfig,
    pub u_ch: Propagator,
    pub u_hc: Propagator,
    pub hot: IsochoreChannel,
    pub cold: IsochoreChannel,
    /// Eigenbasis of `H_c` (σ_x).
    pub basis_c: EnergyBasis,
    /// Eigenbasis of `H_h` (σ_z).
    pub basis_h: EnergyBasis,
    pub states: CycleState,
    /// One full cycle, starting and ending at `t0`.
    pub map: BlochMap,
    /// Power iterations used; zero when the direct solve was accepted.
    pub iterations: usize,
}

impl LimitCycle {
    /// Hot stroke including the optional dephasing in the `H_h` basis.
    fn hot_stroke(&self) -> BlochMap {
        hot_stroke(&self.hot, &self.basis_h, self.cfg.dephase_after_hot)
    }

    /// Boundary states of a cycle started from `rho`.
    pub fn propagate(&self, rho: &DensityMatrix) -> CycleState {
        let rho_t1 = rho.evolve(&self.u_ch.u);
        let rho_t2 = self.hot_stroke().apply(&rho_t1);
        let rho_t3 = rho_t2.evolve(&self.u_hc.u);
        let rho_end = self.cold.apply(&rho_t3);
        CycleState {
            rho_t0: *rho,
            rho_t1,
            rho_t2,
            rho_t3,
            rho_end,
        }
    }

    /// Applies the cycle map `n` times to `seed`.
    pub fn iterate(&self, seed: &DensityMatrix, n: usize) -> DensityMatrix {
        let mut b = seed.bloch();
        for _ in 0..n {
            b = self.map.apply_bloch(b);
        }
        DensityMatrix::from_bloch(b)
    }

    /// Trace distance between `Φ(ρ_{t0})` and `ρ_{t0}`.
    pub fn residual(&self) -> f64 {
        trace_distance(&self.states.rho_end, &self.states.rho_t0)
    }
}

fn hot_stroke(hot: &IsochoreChannel, basis_h: &EnergyBasis, dephase: bool) -> BlochMap {
    if dephase {
        hot.map.then(&BlochMap::dephasing(basis_h))
    } else {
        hot.map
    }
}

fn bloch_distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    0.5 * ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn power_iteration(map: &BlochMap, start: [f64; 3]) -> Result<([f64; 3], usize)> {
    let mut b = start;
    let mut residual = f64::INFINITY;
    for k in 1..=MAX_CYCLE_ITERATIONS {
        let next = map.apply_bloch(b);
        residual = bloch_distance(next, b);
        b = next;
        if residual <= LIMIT_CYCLE_TOL {
            return Ok((b, k));
        }
    }
    Err(OttoError::NoLimitCycle { residual })
}

/// Builds all strokes and solves `Φ(ρ) = ρ` for the cycle map
/// `Φ = cold ∘ U_hc ∘ hot ∘ U_ch`.
///
/// The affine Bloch fixed point is solved directly; if the system is
/// singular or the residual exceeds [`LIMIT_CYCLE_TOL`], the map is iterated
/// from the direct estimate (or the maximally mixed state).
pub fn solve_limit_cycle(cfg: &EngineConfig) -> Result<LimitCycle> {
    cfg.check_physical()?;
    let u_ch = build_propagator(cfg, Stroke::Compression)?;
    let u_hc = build_propagator(cfg, Stroke::Expansion)?;
    solve_limit_cycle_with(cfg, u_ch, u_hc)
}

/// As [`solve_limit_cycle`] with precomputed drive propagators, which depend
/// only on `ω_c`, `ω_h`, `τ_dri` and `ħ`.
pub fn solve_limit_cycle_with(
    cfg: &EngineConfig,
    u_ch: Propagator,
    u_hc: Propagator,
) -> Result<LimitCycle> {
    cfg.check_physical()?;
    let hot = isochore_channel(cfg, Bath::HotSqueezed)?;
    let cold = isochore_channel(cfg, Bath::ColdThermal)?;
    let basis_c = eig_herm(&cfg.h_cold())?;
    let basis_h = eig_herm(&cfg.h_hot())?;
    let map = BlochMap::from_unitary(&u_ch.u)
        .then(&hot_stroke(&hot, &basis_h, cfg.dephase_after_hot))
        .then(&BlochMap::from_unitary(&u_hc.u))
        .then(&cold.map);

    let (a, t) = map.affine_parts();
    let direct = (Matrix3::identity() - a)
        .lu()
        .solve(&t)
        .map(|b| [b[0], b[1], b[2]])
        .filter(|b| b.iter().all(|v| v.is_finite()));
    let (b0, iterations) = match direct {
        Some(b) if bloch_distance(map.apply_bloch(b), b) <= LIMIT_CYCLE_TOL => (b, 0),
        Some(b) => power_iteration(&map, b)?,
        None => power_iteration(&map, [0.0; 3])?,
    };

    let placeholder = DensityMatrix::from_bloch(b0);
    let mut cycle = LimitCycle {
        cfg: *cfg,
        u_ch,
        u_hc,
        hot,
        cold,
        basis_c,
        basis_h,
        states: CycleState {
            rho_t0: placeholder,
            rho_t1: placeholder,
            rho_t2: placeholder,
            rho_t3: placeholder,
            rho_end: placeholder,
        },
        map,
        iterations,
    };
    cycle.states = cycle.propagate(&placeholder);
    let residual = cycle.residual();
    if residual > LIMIT_CYCLE_TOL {
        return Err(OttoError::NoLimitCycle { residual });
    }
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HotBath;
    use crate::qops::coherence;

    #[test]
    fn reused_propagators_give_the_same_cycle() {
        let cfg = EngineConfig::fig1().with_r(0.2);
        let a = solve_limit_cycle(&cfg).unwrap();
        let b = solve_limit_cycle_with(&cfg, a.u_ch, a.u_hc).unwrap();
        assert_eq!(a.states, b.states);
    }

    #[test]
    fn fixed_point_reproduces_itself() {
        let cycle = solve_limit_cycle(&EngineConfig::fig1()).unwrap();
        assert!(cycle.residual() <= LIMIT_CYCLE_TOL);
        assert_eq!(cycle.iterations, 0);
        assert!(cycle.map.trace_defect() < 1e-12);
    }

    #[test]
    fn agrees_with_brute_force_iteration() {
        let cycle = solve_limit_cycle(&EngineConfig::fig1()).unwrap();
        let brute = cycle.iterate(&DensityMatrix::maximally_mixed(), 200);
        assert!(trace_distance(&brute, &cycle.states.rho_t0) < 1e-12);
    }

    #[test]
    fn independent_of_seed() {
        let cycle = solve_limit_cycle(&EngineConfig::fig1().with_r(0.3)).unwrap();
        let a = cycle.iterate(&DensityMatrix::from_bloch([0.9, 0.1, -0.3]), 400);
        let b = cycle.iterate(&DensityMatrix::from_bloch([-0.2, -0.6, 0.7]), 400);
        assert!(trace_distance(&a, &b) < 1e-10);
        assert!(trace_distance(&a, &cycle.states.rho_t0) < 1e-10);
    }

    #[test]
    fn unitary_strokes_preserve_spectrum() {
        let cycle = solve_limit_cycle(&EngineConfig::fig1().with_r(0.7)).unwrap();
        let s = cycle.states;
        for (x, y) in [(s.rho_t0, s.rho_t1), (s.rho_t2, s.rho_t3)] {
            let (ex, ey) = (x.eigenvalues(), y.eigenvalues());
            assert!((ex[0] - ey[0]).abs() < 1e-10 && (ex[1] - ey[1]).abs() < 1e-10);
        }
    }

    #[test]
    fn dephasing_removes_hot_coherence() {
        let cfg = EngineConfig::fig1().with_dephasing(true);
        let cycle = solve_limit_cycle(&cfg).unwrap();
        assert!(coherence(&cycle.states.rho_t2, &cycle.basis_h) < 1e-14);
    }

    #[test]
    fn full_thermalization_decouples_the_cycle() {
        for bath in [HotBath::SqueezedReservoir, HotBath::SqueezedFrame] {
            let cfg = EngineConfig::fig1()
                .with_tau_h(1e3)
                .with_tau_c(1e3)
                .with_r(0.4)
                .with_hot_bath(bath);
            let cycle = solve_limit_cycle(&cfg).unwrap();
            let cold_ss = cycle.cold.fixed_point().unwrap();
            let hot_ss = cycle.hot.fixed_point().unwrap();
            assert!(trace_distance(&cycle.states.rho_t0, &cold_ss) < 1e-10);
            assert!(trace_distance(&cycle.states.rho_t2, &hot_ss) < 1e-10);
        }
    }
}
