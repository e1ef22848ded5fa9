//! Process-wide cap on the number of expanded Schmidt components.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_COMPONENT_CAP: u64 = 50_000_000;

/// Environment variable read by the CLI to override the cap.
pub const COMPONENT_CAP_ENV: &str = "ENTCAT_COMPONENT_CAP";

static COMPONENT_CAP: AtomicU64 = AtomicU64::new(DEFAULT_COMPONENT_CAP);

pub fn component_cap() -> u64 {
    COMPONENT_CAP.load(Ordering::Relaxed)
}

pub fn set_component_cap(cap: u64) {
    COMPONENT_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check(requested: u128, cap: u64) -> Result<u64> {
    if requested > u128::from(cap) {
        Err(Error::ResourceLimit { requested, cap })
    } else {
        Ok(requested as u64)
    }
}
