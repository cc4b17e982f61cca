use het_core::limits::DEFAULT_ORDER_CAP;

/// Group order cap: `HET_CAP_N` when set to a positive integer, else `2^20`.
pub fn order_cap() -> u64 {
    std::env::var("HET_CAP_N")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_ORDER_CAP)
}

/// Worker count: `HET_THREADS` when set, else rayon's default.
pub fn threads() -> Option<usize> {
    std::env::var("HET_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}
