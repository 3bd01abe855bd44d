//! Instance generation, benchmarking, and scaling-study harness for the
//! matching solvers, plus the `mwm` command-line tool built on top.

pub mod bench;
pub mod config;
pub mod gen;
pub mod scaling;

/// Seed used when neither the command line nor `MWM_SEED` supplies one.
pub const DEFAULT_SEED: u64 = 0x6d77_6d00;

/// Seed precedence: explicit value, then the `MWM_SEED` environment
/// variable, then the fixed default.
pub fn resolve_seed(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| {
            std::env::var("MWM_SEED")
                .ok()
                .and_then(|v| v.trim().parse().ok())
        })
        .unwrap_or(DEFAULT_SEED)
}
