use alloc::string::String;
use core::fmt;

use crate::dsl::ParseError;

/// Errors produced by the symbolic pipeline and the oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The zero polynomial has no primitive part.
    NoPrimitivePart,
    /// Every input polynomial was zero.
    GcdUndefined,
    /// A relation row does not have one entry per unknown.
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    /// `q^n - 1 <= 0`, so the membership rows carry no information.
    DegenerateModulus,
    /// The indicator construction needs a modulus above one.
    IndicatorModulus(u64),
    /// A size limit (enumeration, residue modulus, expansion) was exceeded.
    ScaleExceeded {
        what: &'static str,
        size: String,
        cap: u64,
    },
    /// Too many inequations for inclusion-exclusion.
    TooManyInequations { count: usize, max: usize },
    /// A field oracle was asked for a non-prime characteristic.
    NotPrime(u64),
    /// A value that must be well formed was not.
    Invalid(String),
    /// An internal cross-check failed; always a bug.
    Inconsistent(String),
    /// The system or polynomial text did not parse.
    Parse(ParseError),
}

impl Error {
    pub(crate) fn scale(what: &'static str, size: impl fmt::Display, cap: u64) -> Self {
        Error::ScaleExceeded {
            what,
            size: alloc::format!("{size}"),
            cap,
        }
    }

    /// True for errors caused by a size limit rather than bad input.
    pub fn is_scale(&self) -> bool {
        matches!(
            self,
            Error::ScaleExceeded { .. } | Error::TooManyInequations { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoPrimitivePart => f.write_str("no primitive part: zero polynomial"),
            Error::GcdUndefined => f.write_str("gcd undefined: all polynomials are zero"),
            Error::RowLength {
                row,
                expected,
                found,
            } => write!(
                f,
                "relation row {row} has {found} entries, expected {expected}"
            ),
            Error::DegenerateModulus => f.write_str("degenerate modulus q^n-1 <= 0"),
            Error::IndicatorModulus(m) => write!(f, "indicator modulus must exceed 1, got {m}"),
            Error::ScaleExceeded { what, size, cap } => {
                write!(f, "scale cap exceeded: {what} is {size}, cap {cap}")
            }
            Error::TooManyInequations { count, max } => write!(
                f,
                "inclusion-exclusion blow-up: {count} inequations, at most {max} allowed"
            ),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::Invalid(msg) => write!(f, "invalid value: {msg}"),
            Error::Inconsistent(msg) => write!(f, "internal consistency error: {msg}"),
            Error::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
