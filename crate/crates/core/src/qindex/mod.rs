//! Truncated power series in `q`, Laurent series on the torus, constant terms
//! and the index identities built from them.

mod hilbert;
mod torus;

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Q;

pub use hilbert::{
    dynkin_series_report, hilbert_series_by_rank, DynkinSeriesReport, HilbertMode, LaurentPoly, VariableSpec,
};
pub use torus::{
    andrews_ct_check, free_index, free_index_identity_check, invariant_index, molien_weyl_index, AndrewsReport,
    GeneratorShape, TorusQSeries,
};

/// `Σ_{i ≤ N} a_i q^i`, arithmetic modulo `q^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Q>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: alloc::vec![Q::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        QSeries::monomial(order, 0, Q::one())
    }

    /// `c q^k` (zero if `k > order`).
    pub fn monomial(order: usize, k: usize, c: Q) -> Self {
        let mut s = QSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients `a_0, a_1, …`; the order is `len − 1`. Panics on an empty slice.
    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        QSeries { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        let mut s = QSeries::zero(order);
        for (i, &c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = Q::from_integer(c.into());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn set(&mut self, i: usize, c: Q) {
        if i <= self.order() {
            self.coeffs[i] = c;
        }
    }

    /// Same series at a lower (or higher, zero-padded) order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        for (i, c) in self.coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == QSeries::one(self.order())
    }

    pub fn scale(&self, r: &Q) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn common(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut out = QSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiplies in place by `1 − c q^k`, `k ≥ 1`.
    pub fn mul_one_minus(&mut self, c: &Q, k: usize) {
        assert!(k >= 1);
        for j in (k..=self.order()).rev() {
            let d = &self.coeffs[j - k] * c;
            self.coeffs[j] -= d;
        }
    }

    /// Multiplies in place by `1 / (1 − c q^k)`, `k ≥ 1`.
    pub fn div_one_minus(&mut self, c: &Q, k: usize) {
        assert!(k >= 1);
        for j in k..=self.order() {
            let d = &self.coeffs[j - k] * c;
            self.coeffs[j] += d;
        }
    }

    /// Multiplicative inverse; `None` if the constant term is zero.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut out = QSeries::zero(n);
        out.coeffs[0] = a0.recip();
        for k in 1..=n {
            let mut s = Q::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -s / &a0;
        }
        Some(out)
    }

    /// Integer power; negative exponents need an invertible constant term.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = QSeries::one(self.order());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// `(q; q)_∞ = Π_{k ≥ 1} (1 − q^k)` truncated at `order`.
    pub fn euler(order: usize) -> Self {
        let mut s = QSeries::one(order);
        for k in 1..=order {
            s.mul_one_minus(&Q::one(), k);
        }
        s
    }

    /// `(c q^a; q)_∞ = Π_{i ≥ 0} (1 − c q^{a+i})`; the factor `1 − c` for `a = 0` is a scalar.
    pub fn pochhammer(order: usize, c: &Q, a: usize) -> Self {
        let mut s = QSeries::one(order);
        if a == 0 {
            s = s.scale(&(Q::one() - c));
        }
        for k in a.max(1)..=order {
            s.mul_one_minus(c, k);
        }
        s
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Q)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        let unit = a.is_one();
        if k == 0 {
            write!(f, "{a}")?;
            continue;
        }
        if !unit {
            write!(f, "{a}*")?;
        }
        if k == 1 {
            f.write_str(var)?;
        } else {
            write!(f, "{var}^{k}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// The retained coefficients as a polynomial, without the `O(q^{N+1})` tail.
pub struct Truncated<'a>(&'a QSeries);

impl QSeries {
    pub fn polynomial(&self) -> Truncated<'_> {
        Truncated(self)
    }
}

impl fmt::Display for Truncated<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)), "q")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)), "q")?;
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
