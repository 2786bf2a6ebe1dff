//! Stroke propagation and the limit-cycle solve.

mod bloch;
mod channel;
mod cycle;
mod propagator;

pub use bloch::{lindblad_generator, BlochMap};
pub use channel::{
    isochore_channel, squeezed_occupation, thermal_occupation, Bath, IsochoreChannel,
};
pub use cycle::{
    solve_limit_cycle, solve_limit_cycle_with, CycleState, LimitCycle, LIMIT_CYCLE_TOL,
    MAX_CYCLE_ITERATIONS,
};
pub use propagator::{
    build_propagator, time_ordered_exp, transition_probability, Propagator, MAX_STEPS,
    PROPAGATOR_TOL,
};

pub use crate::qops::dephasing_map;
