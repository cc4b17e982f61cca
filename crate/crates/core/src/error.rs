use core::fmt;

/// Failures of the toolkit. Every variant is recoverable by the caller.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A cyclic factor smaller than 2.
    InvalidFactor(u64),
    /// A computation would exceed one of the configured desk-scale caps.
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    /// Operands live in different groups (or an element is out of range).
    GroupMismatch,
    /// An operation that needs a nonempty set got an empty one.
    EmptySet(&'static str),
    InvalidArgument(&'static str),
    /// Exact integer arithmetic overflowed 128 bits.
    Overflow,
    /// The weight does not give a Hermitian operator for the requested sign.
    NotHermitian,
    NoConvergence { sweeps: usize },
    /// The operation needs a prime-field group `Z/p`.
    NotPrimeField,
    /// A weight (or matrix) is not invariant under the subgroup action.
    NotInvariant,
    /// A constructive verification that should always succeed did not.
    VerificationFailed(&'static str),
    /// The combinatorial and the Fourier evaluation of the same quantity disagree.
    PathDisagreement { combinatorial: f64, fourier: f64 },
    /// The almost-period sampler found no usable sample.
    NoAlmostPeriods { trials: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidFactor(n) => write!(f, "cyclic factor {n} is smaller than 2"),
            Error::CapExceeded { what, needed, cap } => {
                write!(f, "{what}: {needed} exceeds the cap {cap}")
            }
            Error::GroupMismatch => f.write_str("operands belong to different groups"),
            Error::EmptySet(what) => write!(f, "{what} must be nonempty"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::Overflow => f.write_str("exact integer arithmetic overflowed"),
            Error::NotHermitian => f.write_str("weight does not define a Hermitian operator"),
            Error::NoConvergence { sweeps } => {
                write!(f, "Jacobi iteration did not converge after {sweeps} sweeps")
            }
            Error::NotPrimeField => f.write_str("operation requires the prime field Z/p"),
            Error::NotInvariant => f.write_str("operator is not invariant under the subgroup"),
            Error::VerificationFailed(what) => write!(f, "verification failed: {what}"),
            Error::PathDisagreement {
                combinatorial,
                fourier,
            } => write!(
                f,
                "combinatorial value {combinatorial} disagrees with Fourier value {fourier}"
            ),
            Error::NoAlmostPeriods { trials } => {
                write!(f, "no nonempty almost-period set found in {trials} trials")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

/// Checked `u128` multiply, mapped to [`Error::Overflow`].
pub(crate) fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn pow(a: u128, e: u32) -> Result<u128> {
    a.checked_pow(e).ok_or(Error::Overflow)
}
