//! Square matrices with entries in the free supercommutative algebra.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Zero};

use crate::superalg::{GenKind, GenLabel, Parity, PolyDisplay, Registry, RegistryId, SuperPolynomial};
use crate::{Error, Q};

/// An `n × n` matrix of [`SuperPolynomial`]s sharing one registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    n: usize,
    registry: RegistryId,
    entries: Vec<SuperPolynomial>,
}

impl SuperMatrix {
    pub fn zero(registry: RegistryId, n: usize) -> Self {
        SuperMatrix { n, registry, entries: alloc::vec![SuperPolynomial::zero(registry); n * n] }
    }

    pub fn identity(registry: RegistryId, n: usize) -> Self {
        let mut m = SuperMatrix::zero(registry, n);
        for i in 0..n {
            m.entries[i * n + i] = SuperPolynomial::constant(registry, Q::one());
        }
        m
    }

    /// Row-major entries; panics unless there are `n²` of them, all in `registry`.
    pub fn from_entries(registry: RegistryId, n: usize, entries: Vec<SuperPolynomial>) -> Self {
        assert_eq!(entries.len(), n * n);
        assert!(entries.iter().all(|e| e.registry() == registry));
        SuperMatrix { n, registry, entries }
    }

    /// Generic matrix `(x_{h,k})` with fresh generators labelled `label:h,k`.
    /// When `traceless`, entry `(n,n)` is `−Σ_{i<n} x_{i,i}` instead of a generator.
    pub fn generic(
        registry: &mut Registry,
        kind: GenKind,
        label: &str,
        n: usize,
        traceless: bool,
    ) -> Result<Self, Error> {
        registry.claim_group(label)?;
        let id = registry.id();
        let mut entries = Vec::with_capacity(n * n);
        for h in 1..=n {
            for k in 1..=n {
                if traceless && h == n && k == n {
                    entries.push(SuperPolynomial::zero(id));
                    continue;
                }
                let g = registry.allocate(kind, GenLabel::new(label, &[h as u32, k as u32]))?;
                entries.push(SuperPolynomial::generator(registry, &g));
            }
        }
        if traceless && n > 0 {
            let mut last = SuperPolynomial::zero(id);
            for i in 0..n - 1 {
                last = &last - &entries[i * n + i];
            }
            entries[n * n - 1] = last;
        }
        Ok(SuperMatrix { n, registry: id, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn registry(&self) -> RegistryId {
        self.registry
    }

    pub fn get(&self, row: usize, col: usize) -> &SuperPolynomial {
        &self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[SuperPolynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SuperPolynomial::is_zero)
    }

    /// `Some(p)` if every nonzero entry is homogeneous of parity `p`
    /// (the zero matrix is even), `None` for a mixed matrix.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for e in self.entries.iter().filter(|e| !e.is_zero()) {
            let p = e.parity()?;
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    fn check(&self, other: &SuperMatrix) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        if self.registry != other.registry {
            return Err(crate::superalg::AlgebraError::RegistryMismatch {
                left: self.registry,
                right: other.registry,
            }
            .into());
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix, Error> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(SuperMatrix { n: self.n, registry: self.registry, entries })
    }

    pub fn sub(&self, other: &SuperMatrix) -> Result<SuperMatrix, Error> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(SuperMatrix { n: self.n, registry: self.registry, entries })
    }

    pub fn scale(&self, r: &Q) -> SuperMatrix {
        SuperMatrix { n: self.n, registry: self.registry, entries: self.entries.iter().map(|e| e.scale(r)).collect() }
    }

    /// `p · A`, the scalar written on the left.
    pub fn left_mul_scalar(&self, p: &SuperPolynomial) -> Result<SuperMatrix, Error> {
        let entries = self.entries.iter().map(|e| p.try_mul(e)).collect::<Result<_, _>>()?;
        Ok(SuperMatrix { n: self.n, registry: self.registry, entries })
    }

    /// `A · p`, the scalar written on the right.
    pub fn right_mul_scalar(&self, p: &SuperPolynomial) -> Result<SuperMatrix, Error> {
        let entries = self.entries.iter().map(|e| e.try_mul(p)).collect::<Result<_, _>>()?;
        Ok(SuperMatrix { n: self.n, registry: self.registry, entries })
    }

    pub fn matmul(&self, other: &SuperMatrix) -> Result<SuperMatrix, Error> {
        self.check(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = SuperPolynomial::zero(self.registry);
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    let b = &other.entries[k * n + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let prod = a.mul_unchecked(b);
                    acc.add_scaled_assign(&prod, &Q::one());
                }
                entries.push(acc);
            }
        }
        Ok(SuperMatrix { n, registry: self.registry, entries })
    }

    /// `A^k` by binary powering; `A^0` is the identity.
    pub fn pow(&self, mut k: u32) -> SuperMatrix {
        let mut result = SuperMatrix::identity(self.registry, self.n);
        let mut base = self.clone();
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first { base.clone() } else { result.matmul(&base).unwrap() };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base).unwrap();
            }
        }
        result
    }

    pub fn trace(&self) -> SuperPolynomial {
        let mut t = SuperPolynomial::zero(self.registry);
        for i in 0..self.n {
            t.add_scaled_assign(&self.entries[i * self.n + i], &Q::one());
        }
        t
    }

    /// Grid of entry strings, one row per line.
    pub fn to_text(&self, registry: &Registry) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| alloc::format!("{}", e.display(registry))).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.n {
            out.push('[');
            for j in 0..self.n {
                let c = &cells[i * self.n + j];
                if j > 0 {
                    out.push_str(" | ");
                }
                let _ = write!(out, "{c:<width$}");
            }
            out.push_str("]\n");
        }
        out
    }

    pub fn entry_display<'a>(&'a self, registry: &'a Registry, row: usize, col: usize) -> PolyDisplay<'a> {
        self.get(row, col).display(registry)
    }
}

/// Residual `n ξ^{2n−1} − Σ_{i=0}^{n−1} ξ^{2i} t_{n−i}` with `t_i = tr(ξ^{2i−1})`
/// for a generic fermionic `ξ` of size `n`. Returns the registry holding `ξ`'s
/// entries together with the residual matrix.
pub fn dynkin_relation_residual(n: usize) -> (Registry, SuperMatrix) {
    let mut reg = Registry::new();
    let xi = SuperMatrix::generic(&mut reg, GenKind::Fermionic, "xi", n, false).unwrap();
    reg.freeze();
    let powers = odd_even_powers(&xi, 2 * n);
    let t = |i: usize| powers[2 * i - 1].trace();
    let mut res = powers[2 * n - 1].scale(&Q::from_integer((n as i64).into()));
    for i in 0..n {
        let term = powers[2 * i].right_mul_scalar(&t(n - i)).unwrap();
        res = res.sub(&term).unwrap();
    }
    (reg, res)
}

/// `[A^0, A^1, …, A^k]`.
pub fn odd_even_powers(a: &SuperMatrix, k: usize) -> Vec<SuperMatrix> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(SuperMatrix::identity(a.registry(), a.size()));
    for i in 1..=k {
        let next = out[i - 1].matmul(a).unwrap();
        out.push(next);
    }
    out
}

/// Facts about one generic fermionic matrix of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMatrixReport {
    pub n: usize,
    /// `k` with `tr(ξ^{2k}) ≠ 0`, for `1 ≤ k ≤ n+1`.
    pub nonzero_even_traces: Vec<usize>,
    pub top_power_zero: bool,
    pub below_top_nonzero: bool,
    pub dynkin_residual_zero: bool,
}

impl OneMatrixReport {
    pub fn holds(&self) -> bool {
        self.nonzero_even_traces.is_empty() && self.top_power_zero && self.below_top_nonzero && self.dynkin_residual_zero
    }
}

/// Checks `tr(ξ^{2k}) = 0` for `k ≤ n+1`, `ξ^{2n} = 0`, `ξ^{2n−1} ≠ 0` and the
/// vanishing of the `t_n` relation.
pub fn one_matrix_report(n: usize) -> OneMatrixReport {
    let mut reg = Registry::new();
    let xi = SuperMatrix::generic(&mut reg, GenKind::Fermionic, "xi", n, false).unwrap();
    let powers = odd_even_powers(&xi, 2 * n + 2);
    let nonzero_even_traces = (1..=n + 1).filter(|&k| !powers[2 * k].trace().is_zero()).collect();
    OneMatrixReport {
        n,
        nonzero_even_traces,
        top_power_zero: powers[2 * n].is_zero(),
        below_top_nonzero: !powers[2 * n - 1].is_zero(),
        dynkin_residual_zero: dynkin_relation_residual(n).1.is_zero(),
    }
}

/// Scalar `c` as a polynomial of `reg`.
pub fn scalar(reg: RegistryId, c: i64) -> SuperPolynomial {
    if c == 0 {
        SuperPolynomial::zero(reg)
    } else {
        SuperPolynomial::constant(reg, Q::from_integer(c.into()))
    }
}

#[doc(hidden)]
pub fn is_scalar_matrix(m: &SuperMatrix, c: &Q) -> bool {
    (0..m.size()).all(|i| {
        (0..m.size()).all(|j| {
            let e = m.get(i, j);
            if i == j {
                e.as_constant().as_ref() == Some(c)
            } else {
                e.is_zero()
            }
        })
    }) || (c.is_zero() && m.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generic_shapes() {
        let mut r = Registry::new();
        let a = SuperMatrix::generic(&mut r, GenKind::Fermionic, "a", 1, false).unwrap();
        assert_eq!(a.parity(), Some(Parity::Odd));
        let b = SuperMatrix::generic(&mut r, GenKind::Fermionic, "b", 2, true).unwrap();
        assert!(b.trace().is_zero());
        assert_eq!(b.get(1, 1), &-b.get(0, 0));
        assert_eq!(r.count(GenKind::Fermionic), 1 + 3);
        let c = SuperMatrix::generic(&mut r, GenKind::Fermionic, "c", 3, false).unwrap();
        assert_eq!(r.count(GenKind::Fermionic), 4 + 9);
        assert_eq!(c.trace().len(), 3);
        assert!(matches!(
            SuperMatrix::generic(&mut r, GenKind::Bosonic, "c", 2, false),
            Err(Error::Algebra(crate::superalg::AlgebraError::LabelReused(_)))
        ));
    }

    #[test]
    fn identity_is_neutral_and_has_trace_n() {
        let mut r = Registry::new();
        let a = SuperMatrix::generic(&mut r, GenKind::Bosonic, "a", 3, false).unwrap();
        let i = SuperMatrix::identity(r.id(), 3);
        assert_eq!(a.matmul(&i).unwrap(), a);
        assert_eq!(i.trace().as_constant(), Some(Q::from_integer(3.into())));
    }

    #[test]
    fn size_mismatch_reported() {
        let mut r = Registry::new();
        let a = SuperMatrix::generic(&mut r, GenKind::Bosonic, "a", 2, false).unwrap();
        let b = SuperMatrix::generic(&mut r, GenKind::Bosonic, "b", 3, false).unwrap();
        assert_eq!(a.matmul(&b), Err(Error::SizeMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn one_fermionic_matrix_facts() {
        for n in 1..=3 {
            let rep = one_matrix_report(n);
            assert!(rep.holds(), "{rep:?}");
        }
    }

    #[test]
    fn cube_at_size_two_is_nonzero_but_fourth_power_vanishes() {
        let mut r = Registry::new();
        let xi = SuperMatrix::generic(&mut r, GenKind::Fermionic, "xi", 2, false).unwrap();
        assert!(!xi.pow(3).is_zero());
        assert!(xi.pow(4).is_zero());
        assert_eq!(xi.pow(3), xi.matmul(&xi).unwrap().matmul(&xi).unwrap());
    }

    #[test]
    fn one_by_one_dynkin() {
        let (_, res) = dynkin_relation_residual(1);
        assert!(res.is_zero());
    }

    fn random_homogeneous(r: &mut Registry, name: &str, n: usize, odd: bool, seed: u64) -> SuperMatrix {
        // a generic matrix times a random scalar combination of fresh generators,
        // which keeps the parity homogeneous and the entries non-generic
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let kind = if odd { GenKind::Fermionic } else { GenKind::Bosonic };
        let g = SuperMatrix::generic(r, kind, name, n, false).unwrap();
        let h = SuperMatrix::generic(r, GenKind::Bosonic, &alloc::format!("{name}'"), n, false).unwrap();
        let c = Q::from_integer(rng.gen_range(-3i64..=3).into());
        g.matmul(&h).unwrap().add(&g.scale(&c)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn trace_is_supercyclic(n in 1usize..=3, pa in any::<bool>(), pb in any::<bool>(), seed in any::<u64>()) {
            let mut r = Registry::new();
            let a = random_homogeneous(&mut r, "A", n, pa, seed);
            let b = random_homogeneous(&mut r, "B", n, pb, seed ^ 0x9e37);
            let ab = a.matmul(&b).unwrap().trace();
            let ba = b.matmul(&a).unwrap().trace();
            let expected = if pa && pb { -&ba } else { ba };
            prop_assert_eq!(ab, expected);
        }
    }
}
