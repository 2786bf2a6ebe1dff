//! Two-point-measurement statistics of heat and work: the measured Markov
//! chain, its scaled cumulant generating function, the efficiency rate
//! function and a Monte Carlo sampler.

mod cgf;
mod chain;
mod histogram;
mod jet;
mod ldf;
mod optimize;
mod sample;

pub use cgf::{
    cgf, cgf_iid, cgf_iid_jet, cgf_jet, heat_cumulants, path_moments, work_cumulants, PathMoments,
};
pub use chain::{stationary_of, Increments, Kernel, PathLevels, TpmChain};
pub use histogram::{
    atom_index, stochastic_efficiency_histogram, EfficiencyAtom, EfficiencyHistogram,
};
pub use jet::Jet;
pub use ldf::{
    default_eta_grid, eta_grid, ldf, ldf_point, tpm_efficiency, LdfCurve, TILT_LIMIT, TILT_TOL,
};
pub use optimize::{bracket_convex, golden_section, Minimum};
pub use sample::{
    block_event_probability, sample_trajectories, BlockSums, SampleSummary, BLOCK_SIZE,
};

use crate::dynamics::LimitCycle;

/// Measurement chain of a solved limit cycle.
pub fn build_tpm_chain(cycle: &LimitCycle) -> TpmChain {
    TpmChain::from_cycle(cycle)
}
