use core::fmt;

use crate::superalg::AlgebraError;

/// Errors raised above the polynomial layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Algebra(AlgebraError),
    SizeMismatch { left: usize, right: usize },
    ParityMismatch,
    NotMultilinear,
    NotHomogeneous,
    BadArity { e: usize, f: usize, n: usize },
    TooLarge { what: &'static str, value: usize, cap: usize },
    Unassigned(crate::freetrace::Letter),
}

impl From<AlgebraError> for Error {
    fn from(e: AlgebraError) -> Self {
        Error::Algebra(e)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Algebra(e) => write!(f, "{e}"),
            Error::SizeMismatch { left, right } => write!(f, "matrix sizes differ ({left} vs {right})"),
            Error::ParityMismatch => f.write_str("substitution or assignment does not respect parity"),
            Error::NotMultilinear => f.write_str("expression is not multilinear"),
            Error::NotHomogeneous => f.write_str("expression is not homogeneous in the variable"),
            Error::BadArity { e, f: ff, n } => write!(f, "need e + f = n + 1, got e={e}, f={ff}, n={n}"),
            Error::TooLarge { what, value, cap } => {
                write!(f, "{what} = {value} exceeds the cap {cap}")
            }
            Error::Unassigned(l) => write!(f, "no matrix assigned to {l}"),
        }
    }
}

impl core::error::Error for Error {}
