//! Exact computations with bosonic and fermionic generic matrices.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised bottom-up:
//!
//! * [`superalg`]: the free supercommutative algebra `S(V₀) ⊗ ⋀V₁` over ℚ.
//! * [`gmatrix`]: graded `n × n` matrices over it, generic bosonic/fermionic matrices.
//! * [`freetrace`]: the free superalgebra with trace: signed cyclic trace words,
//!   colorings, p-strings and the permutation ↔ trace monomial encoding.
//! * [`identities`]: super Cayley–Hamilton identities, evaluation into generic
//!   matrices, relation ranks and the charge-graded tables.
//! * [`symfun`]: partitions, hook lengths, codimensions and d-good permutations.
//! * [`qindex`]: truncated q-series, torus constant terms and index identities.
//!
//! With the `parallel` feature some per-permutation loops run on rayon; results
//! are reduced in a fixed order so output does not depend on scheduling.
#![cfg_attr(not(any(test, feature = "parallel")), no_std)]

extern crate alloc;

pub mod freetrace;
pub mod gmatrix;
pub mod identities;
pub mod linalg;
pub mod perm;
pub mod qindex;
pub mod superalg;
pub mod symfun;

mod error;
mod par;

pub use error::Error;

/// Exact rational coefficients used throughout the crate.
pub type Q = num_rational::BigRational;

pub use freetrace::{Letter, TraceExpression, TraceWord};
pub use gmatrix::SuperMatrix;
pub use superalg::{Parity, Registry, SuperPolynomial};
