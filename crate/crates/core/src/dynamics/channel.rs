use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{squeeze_operator, EngineConfig, HotBath};
use crate::qops::{eig_herm, unitary_exp, DensityMatrix, EnergyBasis, Operator2};

use super::bloch::{lindblad_generator, BlochMap};

/// Which reservoir an isochore couples to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bath {
    HotSqueezed,
    ColdThermal,
}

/// CPTP map of one isochoric stroke.
///
/// The Hamiltonian part commutes with the thermal dissipator (both are
/// diagonal in the energy basis), so the channel is the product of the
/// unitary rotation and the exponential of the dissipator alone. The frame
/// variant conjugates the whole thing with the squeeze operator.
#[derive(Debug, Clone, PartialEq)]
pub struct IsochoreChannel {
    pub bath: Bath,
    pub duration: f64,
    /// Channel for the full stroke duration.
    pub map: BlochMap,
    /// Full lab-frame generator (Hamiltonian plus dissipator).
    pub generator: BlochMap,
    /// Energy eigenbasis of the stroke Hamiltonian.
    pub basis: EnergyBasis,
    hamiltonian: Operator2,
    hbar: f64,
    dissipator: BlochMap,
    frame: Option<Operator2>,
}

/// Mean thermal occupation `n̄ = 1/(e^{βħω} − 1)`.
pub fn thermal_occupation(beta: f64, energy: f64) -> f64 {
    1.0 / (beta * energy).exp_m1()
}

/// Squeezed-reservoir occupation `N = n̄ cosh 2r + sinh² r`.
pub fn squeezed_occupation(nbar: f64, r: f64) -> f64 {
    nbar * (2.0 * r).cosh() + r.sinh().powi(2)
}

impl IsochoreChannel {
    /// Channel for an arbitrary duration `t` of the same stroke.
    pub fn at(&self, t: f64) -> BlochMap {
        let rotation = BlochMap::from_unitary(&unitary_exp(&self.hamiltonian, t / self.hbar));
        let inner = self.dissipator.exp_generator(t).then(&rotation);
        match &self.frame {
            None => inner,
            Some(s) => BlochMap::from_unitary(s)
                .then(&inner)
                .then(&BlochMap::from_unitary(&s.dagger())),
        }
    }

    /// Infinite-time fixed point of the stroke generator.
    pub fn fixed_point(&self) -> Option<DensityMatrix> {
        self.generator
            .generator_fixed_point()
            .map(DensityMatrix::from_bloch)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        self.map.apply(rho)
    }
}

/// Builds the isochore for `bath` from the configuration.
///
/// Both baths use the two-jump thermal dissipator with `L = |g⟩⟨e|` in the
/// energy basis, `γ↓ = γ(N + 1)` and `γ↑ = γN`. The cold bath has `N = n̄(β_c)`;
/// the hot bath either uses the squeezed occupation directly
/// ([`HotBath::SqueezedReservoir`]) or the thermal `n̄(β_h)` in the frame
/// `σ = Ŝ ρ Ŝ†` ([`HotBath::SqueezedFrame`]).
pub fn isochore_channel(cfg: &EngineConfig, bath: Bath) -> Result<IsochoreChannel> {
    cfg.check_physical()?;
    let (hamiltonian, beta, gamma, duration) = match bath {
        Bath::ColdThermal => (cfg.h_cold(), cfg.beta_c, cfg.gamma_c, cfg.tau_c),
        Bath::HotSqueezed => (cfg.h_hot(), cfg.beta_h, cfg.gamma_h, cfg.tau_h),
    };
    let basis = eig_herm(&hamiltonian)?;
    let gap = basis.values[1] - basis.values[0];
    let nbar = thermal_occupation(beta, gap);
    let (occupation, frame) = match (bath, cfg.hot_bath) {
        (Bath::ColdThermal, _) => (nbar, None),
        (Bath::HotSqueezed, HotBath::SqueezedReservoir) => (squeezed_occupation(nbar, cfg.r), None),
        (Bath::HotSqueezed, HotBath::SqueezedFrame) => (nbar, Some(squeeze_operator(cfg.r))),
    };
    let lower = basis.ground().outer(basis.excited());
    let jumps = [
        (gamma * (occupation + 1.0), lower),
        (gamma * occupation, lower.dagger()),
    ];
    let dissipator = lindblad_generator(&Operator2::zero(), cfg.hbar, &jumps);
    let lab_generator = lindblad_generator(&hamiltonian, cfg.hbar, &jumps);
    let generator = match &frame {
        None => lab_generator,
        Some(s) => BlochMap(
            BlochMap::from_unitary(&s.dagger()).0 * lab_generator.0 * BlochMap::from_unitary(s).0,
        ),
    };
    let mut channel = IsochoreChannel {
        bath,
        duration,
        map: BlochMap::identity(),
        generator,
        basis,
        hamiltonian,
        hbar: cfg.hbar,
        dissipator,
        frame,
    };
    channel.map = channel.at(duration);
    Ok(channel)
}
