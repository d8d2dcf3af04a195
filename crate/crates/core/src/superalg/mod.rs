//! The free supercommutative superalgebra `𝕂(V) = S(V₀) ⊗ ⋀V₁` over the rationals.
//!
//! Elements are [`SuperPolynomial`]s: finite rational combinations of
//! [`SuperMonomial`]s, each a product of commuting (bosonic) generators with
//! exponents and a set of anticommuting (fermionic) generators kept in
//! ascending order. Every generator belongs to a [`Registry`], and
//! polynomials from different registries refuse to combine.

mod monomial;
mod poly;
mod registry;

use core::fmt;

pub use monomial::{FermionSet, SuperMonomial};
pub use poly::{PolyDisplay, SuperPolynomial};
pub use registry::{GenKind, GenLabel, Generator, Registry, RegistryId};

/// ℤ/2 degree of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(count: usize) -> Parity {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Sum in ℤ/2.
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Whether swapping two homogeneous elements of these parities costs a sign.
    pub fn swap_is_negative(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    RegistryMismatch { left: RegistryId, right: RegistryId },
    NonHomogeneous,
    UnknownGenerator(GenLabel),
    LabelReused(GenLabel),
    RegistryFrozen,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::RegistryMismatch { left, right } => {
                write!(f, "operands belong to different registries ({} vs {})", left.0, right.0)
            }
            AlgebraError::NonHomogeneous => f.write_str("operand is not homogeneous in parity"),
            AlgebraError::UnknownGenerator(l) => write!(f, "unknown generator `{l}`"),
            AlgebraError::LabelReused(l) => write!(f, "generator label `{l}` already allocated"),
            AlgebraError::RegistryFrozen => f.write_str("registry is frozen"),
        }
    }
}

impl core::error::Error for AlgebraError {}
