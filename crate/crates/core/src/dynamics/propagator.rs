use crate::error::{OttoError, Result};
use crate::model::{EngineConfig, Protocol, Stroke};
use crate::qops::{polar_unitary, unitary_exp, EnergyBasis, Operator2};

/// Romberg convergence threshold on successive extrapolants (max-norm).
pub const PROPAGATOR_TOL: f64 = 1e-11;

/// Upper bound on midpoint steps for one stroke.
pub const MAX_STEPS: usize = 1 << 24;

/// Time-ordered unitary of one driven stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    pub u: Operator2,
    pub stroke: Stroke,
    /// Midpoint steps used at the finest level.
    pub steps: usize,
}

/// Product `Π_k exp(−i H(t_k + Δ/2) Δ/ħ)` with `n` equal steps.
fn midpoint_product<F>(h: &F, duration: f64, hbar: f64, n: usize) -> Result<Operator2>
where
    F: Fn(f64) -> Result<Operator2>,
{
    let dt = duration / n as f64;
    let mut u = Operator2::identity();
    for k in 0..n {
        let t = ((k as f64 + 0.5) * dt).min(duration);
        u = unitary_exp(&h(t)?, dt / hbar) * u;
    }
    Ok(u)
}

/// Time-ordered exponential `T_> exp{−(i/ħ)∫_0^τ H(t) dt}`.
///
/// The midpoint product is symmetric, so its error expands in even powers
/// of the step. The step is halved and the sequence Romberg-extrapolated
/// until successive extrapolants agree to [`PROPAGATOR_TOL`]; the accepted
/// value is projected back onto the unitary group. `max_omega` bounds the
/// instantaneous gap and sets the coarsest step. Returns the unitary and the
/// finest step count.
pub fn time_ordered_exp<F>(
    h: F,
    duration: f64,
    hbar: f64,
    max_omega: f64,
) -> Result<(Operator2, usize)>
where
    F: Fn(f64) -> Result<Operator2>,
{
    if duration == 0.0 {
        return Ok((Operator2::identity(), 0));
    }
    // about one radian of phase per step on the coarsest level
    let mut n = ((max_omega * duration).ceil() as usize).clamp(4, MAX_STEPS);
    let mut rows: Vec<Vec<Operator2>> = Vec::new();
    let mut change = f64::INFINITY;
    loop {
        let mut row = vec![midpoint_product(&h, duration, hbar, n)?];
        if let Some(prev) = rows.last() {
            let mut factor = 1.0;
            for j in 1..=prev.len() {
                factor *= 4.0;
                let (a, b) = (row[j - 1], prev[j - 1]);
                row.push(a + (a - b).scale(1.0 / (factor - 1.0)));
            }
            let best = row[row.len() - 1];
            change = (best - prev[prev.len() - 1]).max_norm();
            if rows.len() >= 2 && change < PROPAGATOR_TOL {
                return Ok((polar_unitary(&best), n));
            }
        }
        rows.push(row);
        if n * 2 > MAX_STEPS {
            return Err(OttoError::NoConvergence { steps: n, change });
        }
        n *= 2;
    }
}

/// Time-ordered unitary of the compression or expansion stroke.
pub fn build_propagator(cfg: &EngineConfig, stroke: Stroke) -> Result<Propagator> {
    cfg.check_physical()?;
    let protocol = Protocol::new(stroke, cfg);
    let (u, steps) = time_ordered_exp(
        |t| protocol.hamiltonian(cfg, t),
        protocol.duration,
        cfg.hbar,
        cfg.omega_c.max(cfg.omega_h),
    )?;
    Ok(Propagator { u, stroke, steps })
}

/// Level-transition probability `|⟨e_out|U|g_in⟩|²`.
pub fn transition_probability(
    prop: &Propagator,
    basis_in: &EnergyBasis,
    basis_out: &EnergyBasis,
) -> f64 {
    prop.u
        .element(basis_out.excited(), basis_in.ground())
        .norm_sqr()
        .clamp(0.0, 1.0)
}
