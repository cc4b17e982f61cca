//! Desk-scale caps. Every algorithm in the crate is exponential in some
//! parameter, so anything that would allocate or iterate past these fails
//! with [`crate::Error::CapExceeded`] instead of running for hours.

/// Default cap on the group order `N`.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

/// Maximal number of tuples materialized (or candidate tuples visited) by a
/// tuple-set construction.
pub const TUPLE_CAP: u128 = 1 << 24;

/// Maximal number of entries of a generalized-convolution tensor, and of the
/// loop `prod |supp f_i|` that fills it.
pub const TENSOR_CAP: u128 = 10_000_000;

/// Iteration cap for exhaustive `G^k` enumerations (basis depth checks).
pub const ITERATION_CAP: u128 = 1 << 24;

/// Largest `|A|` for the brute-force magnification ratio.
pub const MAGNIFICATION_CAP: usize = 20;

/// Largest operator dimension handed to the eigensolver.
pub const SPECTRAL_CAP: usize = 2000;

/// Largest direct triple sum `|A|^3`.
pub const TRIPLE_CAP: u128 = 1 << 27;

pub(crate) fn check(what: &'static str, needed: u128, cap: u128) -> crate::Result<()> {
    if needed > cap {
        Err(crate::Error::CapExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}
