//! Representations of finite posets over exact fields.

pub mod differentiation;
pub mod error;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod poset;
pub mod random;
pub mod functors;
pub mod sspace;
pub mod verify;

pub use error::{Error, Result};

/// Default cap on exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Search budget, overridable through `POSETREP_BUDGET`.
pub fn search_budget() -> u64 {
    std::env::var("POSETREP_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
