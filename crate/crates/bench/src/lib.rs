//! Benchmark fixtures shared by the criterion targets.

use otto_core::EngineConfig;

/// Reference configuration with a moderate squeezing.
pub fn reference_config() -> EngineConfig {
    EngineConfig::fig1().with_r(0.5)
}
