//! Enumeration guardrail shared by every brute-force routine.

use crate::error::{Error, Result};

/// Default cap on the number of states an enumeration may visit.
pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ENUM`].
pub const MAX_ENUM_VAR: &str = "DLVAR_MAX_ENUM";

/// Current enumeration limit, honouring `DLVAR_MAX_ENUM` when it parses.
pub fn max_enum() -> u64 {
    std::env::var(MAX_ENUM_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

/// Fails with [`Error::EnumerationLimit`] when `requested` exceeds the limit.
pub fn check(requested: u128) -> Result<()> {
    let limit = max_enum();
    if requested > limit as u128 {
        Err(Error::EnumerationLimit { requested, limit })
    } else {
        Ok(())
    }
}
