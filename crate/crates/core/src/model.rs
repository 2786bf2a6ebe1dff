//! Physical definition of the engine: parameters, drive protocol, stroke
//! Hamiltonians and the squeeze operator.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{OttoError, Result};
use crate::qops::{mat_exp, Operator2};

/// How the hot squeezed reservoir acts on the spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HotBath {
    /// Thermal-form dissipator with the squeezed mean occupation
    /// `N = n̄ cosh 2r + sinh² r`. Its fixed point is the Gibbs state at the
    /// effective inverse temperature `β_h^eff`.
    #[default]
    SqueezedReservoir,
    /// Thermal dissipator applied in the rotated frame `Ŝ(r) ρ Ŝ†(r)`.
    /// Its fixed point is `Ŝ† ρ_Gibbs Ŝ`.
    SqueezedFrame,
}

impl HotBath {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::SqueezedReservoir => "reservoir",
            Self::SqueezedFrame => "frame",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "reservoir" => Some(Self::SqueezedReservoir),
            "frame" => Some(Self::SqueezedFrame),
            _ => None,
        }
    }
}

/// All physical and numerical parameters of one cycle.
///
/// Frequencies are angular, times share the unit of `1/γ`, and energies are
/// `ħω`. `r` is restricted to real, non-negative squeezing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub omega_c: f64,
    pub omega_h: f64,
    pub beta_c: f64,
    pub beta_h: f64,
    pub r: f64,
    pub tau_dri: f64,
    pub tau_h: f64,
    pub tau_c: f64,
    pub gamma_h: f64,
    pub gamma_c: f64,
    pub hbar: f64,
    pub dephase_after_hot: bool,
    #[serde(default)]
    pub hot_bath: HotBath,
}

impl EngineConfig {
    /// Parameters of the reference figure set: `ω_c/2π = 1000`,
    /// `ω_h/2π = 2250`, `β_c = 2/ħω_c`, `β_h = 1/ħω_h`, `τ_c = 3`,
    /// `γ_c = γ_h = 3`, with `τ_h = 0.2`, `τ_dri = 5·10⁻⁴`, `r = 0`.
    pub fn fig1() -> Self {
        let omega_c = TAU * 1000.0;
        let omega_h = TAU * 2250.0;
        Self {
            omega_c,
            omega_h,
            beta_c: 2.0 / omega_c,
            beta_h: 1.0 / omega_h,
            r: 0.0,
            tau_dri: 5e-4,
            tau_h: 0.2,
            tau_c: 3.0,
            gamma_h: 3.0,
            gamma_c: 3.0,
            hbar: 1.0,
            dephase_after_hot: false,
            hot_bath: HotBath::SqueezedReservoir,
        }
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn with_tau_h(mut self, tau_h: f64) -> Self {
        self.tau_h = tau_h;
        self
    }

    pub fn with_tau_c(mut self, tau_c: f64) -> Self {
        self.tau_c = tau_c;
        self
    }

    pub fn with_tau_dri(mut self, tau_dri: f64) -> Self {
        self.tau_dri = tau_dri;
        self
    }

    pub fn with_dephasing(mut self, on: bool) -> Self {
        self.dephase_after_hot = on;
        self
    }

    pub fn with_hot_bath(mut self, bath: HotBath) -> Self {
        self.hot_bath = bath;
        self
    }

    /// `τ_cyc = τ_h + τ_c + 2 τ_dri`.
    pub fn tau_cyc(&self) -> f64 {
        self.tau_h + self.tau_c + 2.0 * self.tau_dri
    }

    /// Hamiltonian on the cold isochore, `ħω_c σ_x / 2`.
    pub fn h_cold(&self) -> Operator2 {
        Operator2::sigma_x().scale(0.5 * self.hbar * self.omega_c)
    }

    /// Hamiltonian on the hot isochore, `ħω_h σ_z / 2`.
    pub fn h_hot(&self) -> Operator2 {
        Operator2::sigma_z().scale(0.5 * self.hbar * self.omega_h)
    }

    /// Effective inverse temperature of the squeezed hot reservoir.
    pub fn beta_h_eff(&self) -> f64 {
        beta_h_eff(self.beta_h, self.hbar * self.omega_h, self.r)
    }

    /// Minimal sanity: finite values, positive frequencies and temperatures,
    /// non-negative durations, rates and squeezing. Everything downstream is
    /// total on configurations that pass this.
    pub fn check_physical(&self) -> Result<()> {
        let fields = [
            ("omega_c", self.omega_c),
            ("omega_h", self.omega_h),
            ("beta_c", self.beta_c),
            ("beta_h", self.beta_h),
            ("r", self.r),
            ("tau_dri", self.tau_dri),
            ("tau_h", self.tau_h),
            ("tau_c", self.tau_c),
            ("gamma_h", self.gamma_h),
            ("gamma_c", self.gamma_c),
            ("hbar", self.hbar),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(OttoError::InvalidConfig(format!("{name} must be finite")));
            }
        }
        let positive = [
            ("omega_c", self.omega_c),
            ("omega_h", self.omega_h),
            ("beta_c", self.beta_c),
            ("beta_h", self.beta_h),
            ("hbar", self.hbar),
        ];
        for (name, v) in positive {
            if v <= 0.0 {
                return Err(OttoError::InvalidConfig(format!("{name} must be > 0")));
            }
        }
        let non_negative = [
            ("r", self.r),
            ("tau_dri", self.tau_dri),
            ("tau_h", self.tau_h),
            ("tau_c", self.tau_c),
            ("gamma_h", self.gamma_h),
            ("gamma_c", self.gamma_c),
        ];
        for (name, v) in non_negative {
            if v < 0.0 {
                return Err(OttoError::InvalidConfig(format!("{name} must be >= 0")));
            }
        }
        Ok(())
    }

    /// Engine-regime invariants: `ω_h > ω_c > 0`, `β_c > β_h > 0`, all
    /// durations positive, `r ≥ 0`.
    pub fn validate(&self) -> Result<()> {
        self.check_physical()?;
        if self.omega_h <= self.omega_c {
            return Err(OttoError::InvalidConfig(
                "omega_h > omega_c > 0 is required".into(),
            ));
        }
        if self.beta_c <= self.beta_h {
            return Err(OttoError::InvalidConfig(
                "beta_c > beta_h > 0 is required".into(),
            ));
        }
        for (name, v) in [
            ("tau_dri", self.tau_dri),
            ("tau_h", self.tau_h),
            ("tau_c", self.tau_c),
        ] {
            if v <= 0.0 {
                return Err(OttoError::InvalidConfig(format!("{name} must be > 0")));
            }
        }
        Ok(())
    }
}

/// `β_h^eff = ln{[2C + (e^x − 1)(C + 1)] / [2C + (e^x − 1)(C − 1)]} / ħω`
/// with `C = cosh 2r` and `x = β ħω`.
pub fn beta_h_eff(beta: f64, energy: f64, r: f64) -> f64 {
    let c = (2.0 * r).cosh();
    let a = (beta * energy).exp_m1();
    ((2.0 * c + a * (c + 1.0)) / (2.0 * c + a * (c - 1.0))).ln() / energy
}

/// Direction of a unitary stroke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stroke {
    /// `ω_c → ω_h`, `σ_x → σ_z`.
    Compression,
    /// The exact time reverse of the compression protocol.
    Expansion,
}

/// A unitary stroke of given duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Protocol {
    pub stroke: Stroke,
    pub duration: f64,
}

impl Protocol {
    pub fn new(stroke: Stroke, cfg: &EngineConfig) -> Self {
        Self {
            stroke,
            duration: cfg.tau_dri,
        }
    }

    /// Hamiltonian at time `s ∈ [0, duration]` measured from the start of the stroke.
    pub fn hamiltonian(&self, cfg: &EngineConfig, s: f64) -> Result<Operator2> {
        match self.stroke {
            Stroke::Compression => hamiltonian_ch(cfg, s),
            Stroke::Expansion => hamiltonian_hc(cfg, s),
        }
    }
}

/// Gap on the compression ramp, `ω(t) = ω_c (1 − t/τ) + ω_h t/τ`.
pub fn omega_at(cfg: &EngineConfig, t: f64) -> f64 {
    if cfg.tau_dri == 0.0 {
        return cfg.omega_c;
    }
    let x = t / cfg.tau_dri;
    cfg.omega_c * (1.0 - x) + cfg.omega_h * x
}

fn check_stroke_time(cfg: &EngineConfig, t: f64) -> Result<()> {
    if !(0.0..=cfg.tau_dri).contains(&t) {
        return Err(OttoError::OutOfRange {
            t,
            duration: cfg.tau_dri,
        });
    }
    Ok(())
}

/// `H_ch(t) = (ħω(t)/2) {cos[πt/(2τ)] σ_x + sin[πt/(2τ)] σ_z}`.
pub fn hamiltonian_ch(cfg: &EngineConfig, t: f64) -> Result<Operator2> {
    check_stroke_time(cfg, t)?;
    let angle = if cfg.tau_dri == 0.0 {
        0.0
    } else {
        FRAC_PI_2 * t / cfg.tau_dri
    };
    let amp = 0.5 * cfg.hbar * omega_at(cfg, t);
    Ok(
        (Operator2::sigma_x().scale(angle.cos()) + Operator2::sigma_z().scale(angle.sin()))
            .scale(amp),
    )
}

/// `H_hc(s) = H_ch(τ − s)`.
pub fn hamiltonian_hc(cfg: &EngineConfig, s: f64) -> Result<Operator2> {
    check_stroke_time(cfg, s)?;
    hamiltonian_ch(cfg, (cfg.tau_dri - s).max(0.0))
}

/// `Ŝ(r) = exp(r σ₋ − r σ₊)` for real `r`; a rotation by `2r` about `y`.
pub fn squeeze_operator(r: f64) -> Operator2 {
    mat_exp(&(Operator2::sigma_minus() - Operator2::sigma_plus()).scale(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::eig_herm;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &Operator2, b: &Operator2, tol: f64) -> bool {
        (*a - *b).max_norm() <= tol
    }

    #[test]
    fn fig1_preset_values() {
        let cfg = EngineConfig::fig1();
        assert_eq!(cfg.omega_c, TAU * 1000.0);
        assert_eq!(cfg.omega_h, TAU * 2250.0);
        assert!((cfg.beta_h * cfg.hbar * cfg.omega_h - 1.0).abs() < 1e-15);
        assert!((cfg.beta_c * cfg.hbar * cfg.omega_c - 2.0).abs() < 1e-15);
        assert_eq!((cfg.tau_c, cfg.gamma_c, cfg.gamma_h), (3.0, 3.0, 3.0));
        assert!(cfg.validate().is_ok());
        assert!((cfg.tau_cyc() - (0.2 + 3.0 + 1e-3)).abs() < 1e-15);
    }

    #[test]
    fn validate_rejects_inverted_gaps_and_temperatures() {
        let mut cfg = EngineConfig::fig1();
        cfg.omega_c = cfg.omega_h;
        assert!(cfg.validate().is_err());
        let mut cfg = EngineConfig::fig1();
        cfg.beta_c = cfg.beta_h;
        assert!(cfg.validate().is_err());
        assert!(EngineConfig::fig1().with_tau_h(0.0).validate().is_err());
        assert!(EngineConfig::fig1()
            .with_tau_h(0.0)
            .check_physical()
            .is_ok());
        assert!(EngineConfig::fig1().with_r(-0.1).check_physical().is_err());
    }

    #[test]
    fn drive_endpoints_and_midpoint() {
        let cfg = EngineConfig::fig1();
        let hc = hamiltonian_ch(&cfg, 0.0).unwrap();
        assert!(close(&hc, &cfg.h_cold(), 1e-12));
        let hh = hamiltonian_ch(&cfg, cfg.tau_dri).unwrap();
        assert!(close(&hh, &cfg.h_hot(), 1e-9));
        let mid = hamiltonian_ch(&cfg, cfg.tau_dri / 2.0).unwrap();
        let want = (Operator2::sigma_x() + Operator2::sigma_z())
            .scale(FRAC_1_SQRT_2 * (cfg.omega_c + cfg.omega_h) / 4.0);
        assert!(close(&mid, &want, 1e-9));
    }

    #[test]
    fn expansion_endpoints_mirror_compression() {
        let cfg = EngineConfig::fig1();
        assert!(close(
            &hamiltonian_hc(&cfg, 0.0).unwrap(),
            &cfg.h_hot(),
            1e-9
        ));
        assert!(close(
            &hamiltonian_hc(&cfg, cfg.tau_dri).unwrap(),
            &cfg.h_cold(),
            1e-12
        ));
        let t = cfg.tau_dri / 2.0;
        assert_eq!(
            hamiltonian_hc(&cfg, t).unwrap(),
            hamiltonian_ch(&cfg, t).unwrap()
        );
    }

    #[test]
    fn out_of_range_times_are_rejected() {
        let cfg = EngineConfig::fig1();
        assert!(matches!(
            hamiltonian_ch(&cfg, -1e-9),
            Err(OttoError::OutOfRange { .. })
        ));
        assert!(matches!(
            hamiltonian_hc(&cfg, cfg.tau_dri * 1.01),
            Err(OttoError::OutOfRange { .. })
        ));
    }

    #[test]
    fn drive_does_not_commute_with_itself() {
        let cfg = EngineConfig::fig1();
        let a = hamiltonian_ch(&cfg, 0.0).unwrap();
        let b = hamiltonian_ch(&cfg, cfg.tau_dri).unwrap();
        assert!(a.commutator(&b).max_norm() > 1e6);
    }

    #[test]
    fn instantaneous_spectrum_follows_the_ramp() {
        let cfg = EngineConfig::fig1();
        let mut last = 0.0;
        for k in 0..=20 {
            let t = cfg.tau_dri * k as f64 / 20.0;
            let w = omega_at(&cfg, t);
            assert!(w >= last);
            last = w;
            let b = eig_herm(&hamiltonian_ch(&cfg, t).unwrap()).unwrap();
            assert!((b.values[1] - 0.5 * w).abs() < 1e-9);
            assert!((b.values[0] + 0.5 * w).abs() < 1e-9);
        }
        assert_eq!(omega_at(&cfg, 0.0), cfg.omega_c);
        assert!((omega_at(&cfg, cfg.tau_dri) - cfg.omega_h).abs() < 1e-9);
    }

    #[test]
    fn squeeze_operator_examples() {
        assert!(close(&squeeze_operator(0.0), &Operator2::identity(), 0.0));
        let r: f64 = 0.5;
        let want = Operator2::from_real([[r.cos(), -r.sin()], [r.sin(), r.cos()]]);
        assert!(close(&squeeze_operator(r), &want, 1e-15));
        for r in [0.1, 1.0, 2.0] {
            assert!(squeeze_operator(r).is_unitary(1e-12));
        }
    }

    #[test]
    fn beta_eff_reduces_to_beta_without_squeezing() {
        let cfg = EngineConfig::fig1();
        assert!((cfg.beta_h_eff() - cfg.beta_h).abs() <= 1e-12 * cfg.beta_h);
        assert!(cfg.with_r(0.5).beta_h_eff() < cfg.beta_h);
    }

    proptest! {
        #[test]
        fn expansion_is_time_reversed_compression(x in 0.0..1.0f64) {
            let cfg = EngineConfig::fig1();
            let t = x * cfg.tau_dri;
            let a = hamiltonian_hc(&cfg, cfg.tau_dri - t).unwrap();
            let b = hamiltonian_ch(&cfg, t).unwrap();
            prop_assert!((a - b).max_norm() < 1e-9);
        }
    }
}
