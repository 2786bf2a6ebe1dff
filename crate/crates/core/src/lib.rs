//! Finite-time quantum Otto engine with a spin-1/2 working medium, a cold
//! thermal reservoir and a hot squeezed reservoir.
//!
//! The crate is organised bottom-up:
//!
//! * [`qops`]: exact 2×2 operator algebra,
//! * [`model`]: parameters, drive protocol, squeeze operator,
//! * [`dynamics`]: unitary propagators, isochore channels, limit cycle,
//! * [`thermo`]: averages, work decomposition, efficiencies, fluctuations,
//! * [`stats`]: two-point-measurement chain, cumulant generating function,
//!   efficiency rate function and Monte Carlo sampling.

pub mod dynamics;
pub mod error;
pub mod model;
pub mod qops;
pub mod stats;
pub mod thermo;

pub use dynamics::{
    build_propagator, isochore_channel, solve_limit_cycle, solve_limit_cycle_with,
    transition_probability, Bath, BlochMap, CycleState, IsochoreChannel, LimitCycle, Propagator,
};
pub use error::{OttoError, Result};
pub use model::{EngineConfig, HotBath, Protocol, Stroke};
pub use qops::{DensityMatrix, EnergyBasis, Operator2};
pub use stats::{LdfCurve, TpmChain};
pub use thermo::{Regime, ThermoReport};
