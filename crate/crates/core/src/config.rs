//! Runtime bounds shared by the enumerators.

/// Environment variable overriding [`DEFAULT_BOUND`].
pub const BOUND_ENV: &str = "IJORD_BOUND";

pub const DEFAULT_BOUND: u64 = 1_000_000;

/// Cardinality bound for fields, polynomial candidates and shape
/// enumeration. Unparsable values fall back to the default.
pub fn cardinality_bound() -> u64 {
    std::env::var(BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BOUND)
}
