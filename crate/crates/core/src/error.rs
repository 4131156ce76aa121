use core::fmt;

/// Errors reported by the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group, field, ring or matrix was requested with unusable parameters.
    InvalidParameter(&'static str),
    /// Operands belong to different groups, rings or have incompatible shapes.
    Mismatch(&'static str),
    /// The field is outside the supported table range.
    UnsupportedField { p: u32, beta: u32 },
    /// The element is a zero divisor where a unit is required.
    NotInvertible,
    /// An input set violates the hypothesis a constructor needs.
    Hypothesis(&'static str),
    /// The zero-divisor encoder cannot build a generator for this structure.
    UnsupportedStructure(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::Mismatch(m) => write!(f, "mismatch: {m}"),
            Error::UnsupportedField { p, beta } => write!(f, "unsupported field GF({p}^{beta})"),
            Error::NotInvertible => write!(f, "element is not invertible"),
            Error::Hypothesis(m) => write!(f, "hypothesis violated: {m}"),
            Error::UnsupportedStructure(m) => write!(f, "unsupported structure: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
