//! The free superalgebra with trace in bosonic letters `y_i` and fermionic
//! letters `x_i`.
//!
//! A trace word `t(w)` is stored as the least rotation of `w` together with the
//! sign collected by `t(AB) = (−1)^{d(A)d(B)} t(BA)`. An element is a rational
//! combination of terms `t(w₁)⋯t(w_r) · W`: a product of trace factors (odd
//! factors in ascending order) followed by an untraced outer word `W`.

mod encode;
mod expr;

use alloc::vec::Vec;
use core::fmt;

use crate::superalg::Parity;

pub use encode::{
    decode, encode_phi, encode_psi, relabel_symmetry_holds, standard_letter, stripped_letter, tau_pstring,
    ColoredPermutation, Decoded,
};
pub use expr::{Term, TraceExpression};
pub(crate) use encode::ratio;

/// A variable of the free algebra. Bosonic letters sort before fermionic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Y(u32),
    X(u32),
}

impl Letter {
    pub fn parity(self) -> Parity {
        match self {
            Letter::Y(_) => Parity::Even,
            Letter::X(_) => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Letter::X(_))
    }

    pub fn index(self) -> u32 {
        match self {
            Letter::Y(i) | Letter::X(i) => i,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Y(i) => write!(f, "y{i}"),
            Letter::X(i) => write!(f, "x{i}"),
        }
    }
}

pub(crate) fn word_parity(w: &[Letter]) -> Parity {
    Parity::from_count(w.iter().filter(|l| l.is_odd()).count())
}

/// A canonical representative of a signed cyclic class. The empty word is `t(1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceWord {
    letters: Vec<Letter>,
}

impl TraceWord {
    /// `t(1)`.
    pub fn unit() -> Self {
        TraceWord { letters: Vec::new() }
    }

    /// Canonical form of `t(w)`: `None` if `t(w) = 0`, otherwise whether the
    /// rotation to the least representative costs a sign.
    pub fn canonical(w: &[Letter]) -> Option<(bool, TraceWord)> {
        let len = w.len();
        if len == 0 {
            return Some((false, TraceWord::unit()));
        }
        let total_odd = w.iter().filter(|l| l.is_odd()).count();
        let mut best: Option<(usize, bool)> = None;
        let mut prefix_odd = 0usize;
        for k in 0..len {
            // rotation moving the prefix w[..k] to the end
            let negative = (prefix_odd % 2 == 1) && ((total_odd - prefix_odd) % 2 == 1);
            match best {
                None => best = Some((k, negative)),
                Some((b, bneg)) => match cmp_rotations(w, k, b) {
                    core::cmp::Ordering::Less => best = Some((k, negative)),
                    core::cmp::Ordering::Equal => {
                        if bneg != negative {
                            return None;
                        }
                    }
                    core::cmp::Ordering::Greater => {}
                },
            }
            if w[k].is_odd() {
                prefix_odd += 1;
            }
        }
        let (k, negative) = best.unwrap();
        let mut letters = Vec::with_capacity(len);
        letters.extend_from_slice(&w[k..]);
        letters.extend_from_slice(&w[..k]);
        Some((negative, TraceWord { letters }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parity(&self) -> Parity {
        word_parity(&self.letters)
    }
}

fn cmp_rotations(w: &[Letter], a: usize, b: usize) -> core::cmp::Ordering {
    let n = w.len();
    for i in 0..n {
        let o = w[(a + i) % n].cmp(&w[(b + i) % n]);
        if o != core::cmp::Ordering::Equal {
            return o;
        }
    }
    core::cmp::Ordering::Equal
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("tr(")?;
        if self.letters.is_empty() {
            f.write_str("1")?;
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}
