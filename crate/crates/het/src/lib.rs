pub use het_core as core;

pub mod cap;
pub mod checks;
pub mod format;
pub mod witness;
pub mod instance;
pub mod suite;
