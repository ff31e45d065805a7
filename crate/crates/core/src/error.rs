use alloc::string::String;
use core::fmt;

/// Errors raised by the core computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A named standard space is unknown or its parameters are out of range.
    BadSpaceRequest(String),
    /// Input simplicial set failed validation (first violation attached).
    InvalidSpace(String),
    /// Input simplicial set has more than one vertex.
    NotReduced,
    /// Matrix or group shapes that were required to agree did not.
    DimensionMismatch { expected: usize, found: usize },
    /// A bracket expression mixes weights.
    NonHomogeneous { expected: usize, found: usize },
    /// A word mentions a generator outside `1..=k`.
    GeneratorOutOfRange { generator: usize, generators: usize },
    /// Two nilpotent values live in different `(k, n)` groups.
    GroupMismatch { left: (usize, usize), right: (usize, usize) },
    /// A weight/class/degree argument is out of range.
    OutOfRange { what: &'static str, value: usize, max: usize },
    /// A configured resource cap would be exceeded.
    ResourceCap { what: &'static str, needed: usize, limit: usize },
    /// Moore homology over degrees that carry torsion is not supported.
    TorsionUnsupported { degree: usize },
    /// An exponent left the machine integer range during collection.
    Overflow,
    /// A computed structure broke an identity it must satisfy. Always a bug.
    InvariantBreach(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadSpaceRequest(m) => write!(f, "bad space request: {m}"),
            Error::InvalidSpace(m) => write!(f, "invalid simplicial set: {m}"),
            Error::NotReduced => write!(f, "simplicial set is not reduced"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonHomogeneous { expected, found } => {
                write!(f, "bracket expression not homogeneous: weight {found} where {expected} expected")
            }
            Error::GeneratorOutOfRange { generator, generators } => {
                write!(f, "generator {generator} out of range 1..={generators}")
            }
            Error::GroupMismatch { left, right } => write!(
                f,
                "group mismatch: (k={}, n={}) vs (k={}, n={})",
                left.0, left.1, right.0, right.1
            ),
            Error::OutOfRange { what, value, max } => write!(f, "{what} = {value} out of range (max {max})"),
            Error::ResourceCap { what, needed, limit } => {
                write!(f, "resource cap exceeded: {what} needs {needed}, limit {limit}")
            }
            Error::TorsionUnsupported { degree } => {
                write!(f, "degree {degree} has torsion; Moore homology needs free degrees")
            }
            Error::Overflow => write!(f, "exponent overflow during collection"),
            Error::InvariantBreach(m) => write!(f, "internal invariant breached: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
