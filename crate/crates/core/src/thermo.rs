//! Cycle averages, work decomposition, efficiencies and fluctuations at the
//! limit cycle.
//!
//! Mean level occupations use the spin convention
//! `⟨n⟩ = Tr(ρH)/(ħω) ∈ [−½, ½]`.

use serde::{Deserialize, Serialize};

use crate::dynamics::LimitCycle;
use crate::error::{OttoError, Result};
use crate::model::EngineConfig;
use crate::qops::{coherence, relative_entropy, DensityMatrix, EnergyBasis, Operator2};

/// Relative tolerance (in units of `ħω_h`) for symbolic vs trace-based energies.
pub const DECOMPOSITION_TOL: f64 = 1e-9;

/// Tolerance on the dimensionless interference terms `ζ`.
pub const ZETA_TOL: f64 = 1e-9;

/// What the cycle does with the two baths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Heat in from the hot bath, work out.
    Engine,
    /// Work in, heat pumped out of the cold bath into the hot one.
    Refrigerator,
    /// Work in, heat dumped into both baths.
    Heater,
    /// Anything else, including no net exchange.
    Dud,
}

impl Regime {
    pub fn classify(q_h: f64, q_c: f64, w_tot: f64) -> Self {
        if q_h > 0.0 && w_tot < 0.0 {
            Self::Engine
        } else if w_tot > 0.0 && q_c > 0.0 && q_h < 0.0 {
            Self::Refrigerator
        } else if w_tot > 0.0 && q_c <= 0.0 && q_h <= 0.0 {
            Self::Heater
        } else {
            Self::Dud
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Engine => "engine",
            Self::Refrigerator => "refrigerator",
            Self::Heater => "heater",
            Self::Dud => "dud",
        }
    }
}

/// Mean occupations at the four stroke boundaries and the transition
/// probability of the driven strokes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Occupations {
    pub n_t0: f64,
    pub n_t1: f64,
    pub n_t2: f64,
    pub n_t3: f64,
    pub xi: f64,
}

/// `⟨w_trls⟩`, `⟨w_fri⟩`, `⟨w_coh⟩` and `⟨w_deph⟩ = ⟨w_trls⟩ + ⟨w_fri⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkDecomposition {
    pub w_trls: f64,
    pub w_fri: f64,
    pub w_coh: f64,
    pub w_deph: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiencies {
    pub eta_th: f64,
    pub eta_otto: f64,
    pub eta_c_gen: f64,
    pub beta_h_eff: f64,
}

/// All deterministic cycle quantities for one configuration.
///
/// Energies are in the units of `ħω`, times in those of `τ`. The `_hwc`
/// fields repeat the dimensional ones in units of `ħω_c` and `1/ω_c`.
/// Efficiency and power fields are `None` outside the engine regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoReport {
    pub regime: Regime,
    pub n_t0: f64,
    pub n_t1: f64,
    pub n_t2: f64,
    pub n_t3: f64,
    pub xi: f64,
    pub zeta_ch: f64,
    pub zeta_hc: f64,
    pub w_tot_avg: f64,
    pub q_h_avg: f64,
    pub q_c_avg: f64,
    pub w_trls: f64,
    pub w_fri: f64,
    pub w_coh: f64,
    pub w_deph: f64,
    pub w_var: f64,
    pub power: Option<f64>,
    pub rel_power_fluct: Option<f64>,
    pub eta_th: Option<f64>,
    pub eta_otto: f64,
    pub eta_c_gen: f64,
    pub coherence_t2: f64,
    pub kl_t2: f64,
    pub beta_h_eff: f64,
    pub tau_cyc: f64,
    pub w_tot_avg_hwc: f64,
    pub q_h_avg_hwc: f64,
    pub q_c_avg_hwc: f64,
    pub w_trls_hwc: f64,
    pub w_fri_hwc: f64,
    pub w_coh_hwc: f64,
    pub w_deph_hwc: f64,
    pub w_var_hwc2: f64,
    pub power_hwc2: Option<f64>,
    pub beta_h_eff_hwc: f64,
    pub tau_cyc_wc: f64,
}

fn energy_unit(cfg: &EngineConfig) -> f64 {
    cfg.hbar * cfg.omega_h
}

fn mismatch(quantity: &'static str, symbolic: f64, direct: f64, tol: f64) -> Result<()> {
    if (symbolic - direct).abs() > tol || !symbolic.is_finite() || !direct.is_finite() {
        return Err(OttoError::DecompositionMismatch {
            quantity,
            symbolic,
            direct,
        });
    }
    Ok(())
}

fn mean_n(rho: &DensityMatrix, h: &Operator2, energy: f64) -> f64 {
    rho.expect(h) / energy
}

/// Mean occupations at `t0..t3` and `ξ` of the compression stroke.
pub fn occupations(cycle: &LimitCycle) -> Occupations {
    let cfg = &cycle.cfg;
    let (hc, hh) = (cfg.h_cold(), cfg.h_hot());
    let (ec, eh) = (cfg.hbar * cfg.omega_c, cfg.hbar * cfg.omega_h);
    let s = &cycle.states;
    Occupations {
        n_t0: mean_n(&s.rho_t0, &hc, ec),
        n_t1: mean_n(&s.rho_t1, &hh, eh),
        n_t2: mean_n(&s.rho_t2, &hh, eh),
        n_t3: mean_n(&s.rho_t3, &hc, ec),
        xi: crate::dynamics::transition_probability(&cycle.u_ch, &cycle.basis_c, &cycle.basis_h),
    }
}

/// `ζ = −Re[U^{gg} ρ^{ge} (U^{ge})*]` with `U^{ab} = ⟨a_out|U|b_in⟩` and
/// `ρ^{ge} = ⟨g_in|ρ|e_in⟩`.
pub fn zeta_matrix_element(
    u: &Operator2,
    rho: &DensityMatrix,
    basis_in: &EnergyBasis,
    basis_out: &EnergyBasis,
) -> f64 {
    let (g_in, e_in) = (basis_in.ground(), basis_in.excited());
    let g_out = basis_out.ground();
    let u_gg = u.element(g_out, g_in);
    let u_ge = u.element(g_out, e_in);
    let rho_ge = rho.op().element(g_in, e_in);
    -(u_gg * rho_ge * u_ge.conj()).re
}

/// Interference terms `(ζ_ch, ζ_hc)`.
///
/// Taken from `⟨n_{t1}⟩ = (1 − 2ξ)⟨n_{t0}⟩ + 2ζ_ch` and
/// `⟨n_{t3}⟩ = (1 − 2ξ)⟨n_{t2}⟩ + 2ζ_hc`, then checked against
/// [`zeta_matrix_element`].
pub fn zeta_terms(cycle: &LimitCycle) -> Result<(f64, f64)> {
    let n = occupations(cycle);
    let zeta_ch = 0.5 * (n.n_t1 - (1.0 - 2.0 * n.xi) * n.n_t0);
    let zeta_hc = 0.5 * (n.n_t3 - (1.0 - 2.0 * n.xi) * n.n_t2);
    let s = &cycle.states;
    let me_ch = zeta_matrix_element(&cycle.u_ch.u, &s.rho_t0, &cycle.basis_c, &cycle.basis_h);
    let me_hc = zeta_matrix_element(&cycle.u_hc.u, &s.rho_t2, &cycle.basis_h, &cycle.basis_c);
    mismatch("zeta_ch", me_ch, zeta_ch, ZETA_TOL)?;
    mismatch("zeta_hc", me_hc, zeta_hc, ZETA_TOL)?;
    Ok((zeta_ch, zeta_hc))
}

/// `⟨w_tot⟩` from the stroke energy balances, checked against the symbolic form
/// `−⟨w⟩ = ħ(ω_h − ω_c)(n₂ − n₀) + 2ħξ(ω_c n₂ + ω_h n₀) − 2ħω_h ζ_ch − 2ħω_c ζ_hc`.
pub fn average_work(cycle: &LimitCycle) -> Result<f64> {
    let cfg = &cycle.cfg;
    let s = &cycle.states;
    let (hc, hh) = (cfg.h_cold(), cfg.h_hot());
    let direct = (s.rho_t1.expect(&hh) - s.rho_t0.expect(&hc))
        + (s.rho_t3.expect(&hc) - s.rho_t2.expect(&hh));
    let d = work_decomposition(cycle)?;
    let symbolic = -(d.w_deph + d.w_coh);
    mismatch(
        "w_tot",
        symbolic,
        direct,
        DECOMPOSITION_TOL * energy_unit(cfg),
    )?;
    Ok(direct)
}

/// `⟨q_h⟩ = Tr[(ρ_{t2} − ρ_{t1}) H_h]`, checked against
/// `ħω_h[n₂ + n₀(2ξ − 1) − 2ζ_ch]`.
pub fn average_heat_hot(cycle: &LimitCycle) -> Result<f64> {
    let cfg = &cycle.cfg;
    let s = &cycle.states;
    let hh = cfg.h_hot();
    let direct = s.rho_t2.expect(&hh) - s.rho_t1.expect(&hh);
    let n = occupations(cycle);
    let (zeta_ch, _) = zeta_terms(cycle)?;
    let symbolic = cfg.hbar * cfg.omega_h * (n.n_t2 + n.n_t0 * (2.0 * n.xi - 1.0) - 2.0 * zeta_ch);
    mismatch(
        "q_h",
        symbolic,
        direct,
        DECOMPOSITION_TOL * energy_unit(cfg),
    )?;
    Ok(direct)
}

/// `⟨q_c⟩ = Tr[(ρ_end − ρ_{t3}) H_c]`.
pub fn average_heat_cold(cycle: &LimitCycle) -> f64 {
    let hc = cycle.cfg.h_cold();
    cycle.states.rho_end.expect(&hc) - cycle.states.rho_t3.expect(&hc)
}

/// Closed-form work variance in terms of `⟨n⟩`, `ξ` and `ζ`.
pub fn work_variance(cycle: &LimitCycle) -> Result<f64> {
    let cfg = &cycle.cfg;
    let n = occupations(cycle);
    let (zeta_ch, zeta_hc) = zeta_terms(cycle)?;
    let var = variance_formula(cfg, n.n_t0, n.n_t2, n.xi, zeta_ch, zeta_hc);
    let scale = energy_unit(cfg).powi(2);
    if var < -1e-12 * scale || !var.is_finite() {
        return Err(OttoError::NegativeVariance(var));
    }
    Ok(var.max(0.0))
}

fn variance_formula(cfg: &EngineConfig, n0: f64, n2: f64, xi: f64, zch: f64, zhc: f64) -> f64 {
    let (wh, wc) = (cfg.hbar * cfg.omega_h, cfg.hbar * cfg.omega_c);
    let a = n0 * (1.0 - 2.0 * xi) + 2.0 * zch;
    let b = n2 * (1.0 - 2.0 * xi) + 2.0 * zhc;
    wh * wh * (0.5 - n2 * n2 - a * a)
        + wc * wc * (0.5 - n0 * n0 - b * b)
        + wc * wh * (2.0 * n0 * a + 2.0 * n2 * b + 2.0 * xi - 1.0)
}

pub fn work_decomposition(cycle: &LimitCycle) -> Result<WorkDecomposition> {
    let cfg = &cycle.cfg;
    let n = occupations(cycle);
    let (zeta_ch, zeta_hc) = zeta_terms(cycle)?;
    let hb = cfg.hbar;
    let w_trls = hb * (cfg.omega_h - cfg.omega_c) * (n.n_t2 - n.n_t0);
    let w_fri = 2.0 * hb * n.xi * (cfg.omega_c * n.n_t2 + cfg.omega_h * n.n_t0);
    let w_coh = -2.0 * hb * cfg.omega_h * zeta_ch - 2.0 * hb * cfg.omega_c * zeta_hc;
    Ok(WorkDecomposition {
        w_trls,
        w_fri,
        w_coh,
        w_deph: w_trls + w_fri,
    })
}

/// Thermal, Otto and generalized Carnot efficiencies. `η_th = −⟨w⟩/⟨q_h⟩` is
/// checked against `η_Otto + 2(ħω_c/⟨q_h⟩)[ξ(n₀ + n₂) − ζ_hc − ζ_ch]`.
pub fn efficiencies(cycle: &LimitCycle, w_tot: f64, q_h: f64) -> Result<Efficiencies> {
    let cfg = &cycle.cfg;
    let (eta_otto, eta_c_gen, beta_h_eff) = efficiency_bounds(cfg);
    if !(q_h > 0.0 && w_tot < 0.0) {
        return Err(OttoError::NotEngine { q_h, w_tot });
    }
    let eta_th = -w_tot / q_h;
    let n = occupations(cycle);
    let (zeta_ch, zeta_hc) = zeta_terms(cycle)?;
    let symbolic = eta_otto
        + 2.0 * cfg.hbar * cfg.omega_c / q_h * (n.xi * (n.n_t0 + n.n_t2) - zeta_hc - zeta_ch);
    mismatch(
        "eta_th",
        symbolic,
        eta_th,
        DECOMPOSITION_TOL * eta_th.abs().max(1.0),
    )?;
    Ok(Efficiencies {
        eta_th,
        eta_otto,
        eta_c_gen,
        beta_h_eff,
    })
}

/// `(η_Otto, η_C^gen, β_h^eff)`; depend on the configuration only.
pub fn efficiency_bounds(cfg: &EngineConfig) -> (f64, f64, f64) {
    let beta_h_eff = cfg.beta_h_eff();
    (
        1.0 - cfg.omega_c / cfg.omega_h,
        1.0 - beta_h_eff / cfg.beta_c,
        beta_h_eff,
    )
}

/// `(C(ρ_{t2}), D(ρ_{t2} ‖ ρ_h^ss))` in nats, with the coherence taken in the
/// `H_h` eigenbasis and `ρ_h^ss` the fixed point of the hot isochore.
pub fn coherence_diagnostics(cycle: &LimitCycle) -> Result<(f64, f64)> {
    let rho = &cycle.states.rho_t2;
    let ss = cycle
        .hot
        .fixed_point()
        .ok_or_else(|| OttoError::InvalidState("hot isochore has no unique fixed point".into()))?;
    Ok((coherence(rho, &cycle.basis_h), relative_entropy(rho, &ss)))
}

/// `P = −⟨w⟩/τ_cyc` and `√δw² / |⟨w⟩|`.
pub fn power_metrics(w_tot: f64, w_var: f64, tau_cyc: f64) -> Result<(f64, f64)> {
    if w_tot.is_nan() || w_tot >= 0.0 {
        return Err(OttoError::NotEngine {
            q_h: f64::NAN,
            w_tot,
        });
    }
    Ok((-w_tot / tau_cyc, w_var.sqrt() / w_tot.abs()))
}

/// Assembles the full report, enforcing energy conservation and every
/// symbolic cross-check.
pub fn thermo_report(cycle: &LimitCycle) -> Result<ThermoReport> {
    let cfg = &cycle.cfg;
    let n = occupations(cycle);
    let (zeta_ch, zeta_hc) = zeta_terms(cycle)?;
    let w_tot = average_work(cycle)?;
    let q_h = average_heat_hot(cycle)?;
    let q_c = average_heat_cold(cycle);
    let unit = energy_unit(cfg);
    mismatch("energy balance", q_h + q_c + w_tot, 0.0, 1e-10 * unit)?;
    let d = work_decomposition(cycle)?;
    let w_var = work_variance(cycle)?;
    let regime = Regime::classify(q_h, q_c, w_tot);
    let (eta_otto, eta_c_gen, beta_h_eff) = efficiency_bounds(cfg);
    let (eta_th, power, rel) = if regime == Regime::Engine {
        let eff = efficiencies(cycle, w_tot, q_h)?;
        let (p, rel) = power_metrics(w_tot, w_var, cfg.tau_cyc())?;
        (Some(eff.eta_th), Some(p), Some(rel))
    } else {
        (None, None, None)
    };
    let (coherence_t2, kl_t2) = coherence_diagnostics(cycle)?;
    let hwc = cfg.hbar * cfg.omega_c;
    Ok(ThermoReport {
        regime,
        n_t0: n.n_t0,
        n_t1: n.n_t1,
        n_t2: n.n_t2,
        n_t3: n.n_t3,
        xi: n.xi,
        zeta_ch,
        zeta_hc,
        w_tot_avg: w_tot,
        q_h_avg: q_h,
        q_c_avg: q_c,
        w_trls: d.w_trls,
        w_fri: d.w_fri,
        w_coh: d.w_coh,
        w_deph: d.w_deph,
        w_var,
        power,
        rel_power_fluct: rel,
        eta_th,
        eta_otto,
        eta_c_gen,
        coherence_t2,
        kl_t2,
        beta_h_eff,
        tau_cyc: cfg.tau_cyc(),
        w_tot_avg_hwc: w_tot / hwc,
        q_h_avg_hwc: q_h / hwc,
        q_c_avg_hwc: q_c / hwc,
        w_trls_hwc: d.w_trls / hwc,
        w_fri_hwc: d.w_fri / hwc,
        w_coh_hwc: d.w_coh / hwc,
        w_deph_hwc: d.w_deph / hwc,
        w_var_hwc2: w_var / (hwc * hwc),
        power_hwc2: power.map(|p| p / (hwc * cfg.omega_c)),
        beta_h_eff_hwc: beta_h_eff * hwc,
        tau_cyc_wc: cfg.tau_cyc() * cfg.omega_c,
    })
}

/// Solves the limit cycle and evaluates its report.
pub fn simulate(cfg: &EngineConfig) -> Result<ThermoReport> {
    thermo_report(&crate::dynamics::solve_limit_cycle(cfg)?)
}
