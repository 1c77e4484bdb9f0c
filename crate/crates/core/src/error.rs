use thiserror::Error;

/// Everything that can go wrong while validating a class or evaluating its
/// invariants.
///
/// The first group of variants describes bad input. `InternalInvariantViolation`
/// means two independent computations disagreed, which is a bug in this crate
/// rather than in the caller's data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0}")]
    Parse(String),

    #[error("not a singular branch: {0}")]
    NotSingular(String),

    #[error("characteristic exponents must be strictly increasing and exceed n: {0}")]
    NonIncreasing(String),

    #[error("divisibility violation: beta_{index} = {value} is a multiple of e_{prev} = {modulus}", prev = index - 1)]
    DivisibilityViolation { index: usize, value: u64, modulus: u64 },

    #[error("gcd chain does not end in 1 (e_g = {0})")]
    GcdNotOne(u64),

    #[error("not a plane-branch semigroup: {0}")]
    NotPlane(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("negative gap count: {0}")]
    NegativeGapCount(String),

    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// True for errors caused by the caller's data, false for internal ones.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::InternalInvariantViolation(_) | Error::NegativeGapCount(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub(crate) fn sub(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

pub(crate) fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

/// Division that must be exact; a remainder means a formula was fed
/// something it is not integral on.
pub(crate) fn div_exact(a: u64, b: u64, what: &'static str) -> Result<u64> {
    if a % b != 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "{what}: {a} is not divisible by {b}"
        )));
    }
    Ok(a / b)
}
