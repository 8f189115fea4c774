//! Process-wide computation limits.
//!
//! Defaults can be overridden programmatically or, for the dense size limit,
//! through the `HK_FORGE_SIZE_LIMIT` environment variable.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::OnceLock;

pub const DEFAULT_SIZE_LIMIT: u64 = 40_000;
pub const DEFAULT_DELTA_LIMIT: u64 = 4_000_000;
pub const DEFAULT_MU_CAP: u32 = 8;
pub const DEFAULT_SIGMA_LEVEL_CAP: u32 = 24;
pub const SIZE_LIMIT_ENV: &str = "HK_FORGE_SIZE_LIMIT";

static SIZE_LIMIT: AtomicU64 = AtomicU64::new(0);
static DELTA_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_DELTA_LIMIT);
static MU_CAP: AtomicU32 = AtomicU32::new(DEFAULT_MU_CAP);
static SIGMA_LEVEL_CAP: AtomicU32 = AtomicU32::new(DEFAULT_SIGMA_LEVEL_CAP);
static ENV_SIZE_LIMIT: OnceLock<u64> = OnceLock::new();

/// Size limit from the environment, or the default when unset or invalid.
pub fn env_size_limit() -> u64 {
    *ENV_SIZE_LIMIT.get_or_init(|| {
        std::env::var(SIZE_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_SIZE_LIMIT)
    })
}

/// Maximum dimension of dense oracle matrices.
pub fn size_limit() -> u64 {
    match SIZE_LIMIT.load(Ordering::Relaxed) {
        0 => env_size_limit(),
        v => v,
    }
}

pub fn set_size_limit(v: u64) {
    SIZE_LIMIT.store(v.max(1), Ordering::Relaxed);
}

/// Maximum `i*j` for a graded δ-product computation.
pub fn delta_limit() -> u64 {
    DELTA_LIMIT.load(Ordering::Relaxed)
}

pub fn set_delta_limit(v: u64) {
    DELTA_LIMIT.store(v.max(1), Ordering::Relaxed);
}

pub fn mu_cap() -> u32 {
    MU_CAP.load(Ordering::Relaxed)
}

pub fn set_mu_cap(v: u32) {
    MU_CAP.store(v.max(1), Ordering::Relaxed);
}

pub fn sigma_level_cap() -> u32 {
    SIGMA_LEVEL_CAP.load(Ordering::Relaxed)
}

pub fn set_sigma_level_cap(v: u32) {
    SIGMA_LEVEL_CAP.store(v.max(1), Ordering::Relaxed);
}
