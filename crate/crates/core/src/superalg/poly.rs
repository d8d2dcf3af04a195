use alloc::collections::btree_map::{BTreeMap, Entry};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, GenKind, Generator, Parity, Registry, RegistryId, SuperMonomial};
use crate::Q;

/// An element of `S(V₀) ⊗ ⋀V₁` with rational coefficients.
///
/// Canonical: one entry per monomial, no zero coefficients, zero is the empty map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPolynomial {
    registry: RegistryId,
    terms: BTreeMap<SuperMonomial, Q>,
}

impl SuperPolynomial {
    pub fn zero(registry: RegistryId) -> Self {
        SuperPolynomial { registry, terms: BTreeMap::new() }
    }

    pub fn constant(registry: RegistryId, c: Q) -> Self {
        let mut p = SuperPolynomial::zero(registry);
        if !c.is_zero() {
            p.terms.insert(SuperMonomial::one(), c);
        }
        p
    }

    pub fn from_integer(registry: RegistryId, c: i64) -> Self {
        SuperPolynomial::constant(registry, Q::from_integer(c.into()))
    }

    pub fn generator(registry: &Registry, g: &Generator) -> Self {
        let m = match g.kind {
            GenKind::Bosonic => SuperMonomial::bosonic_generator(g.index),
            GenKind::Fermionic => SuperMonomial::fermionic_generator(g.index),
        };
        SuperPolynomial::monomial(registry.id(), m, Q::one())
    }

    pub fn monomial(registry: RegistryId, m: SuperMonomial, c: Q) -> Self {
        let mut p = SuperPolynomial::zero(registry);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn registry(&self) -> RegistryId {
        self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// The constant coefficient, if the polynomial is a scalar.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&SuperMonomial::one()).cloned(),
            _ => None,
        }
    }

    /// `Some(p)` if every term has parity `p` (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(SuperMonomial::parity);
        let first = match it.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.registry == other.registry {
            Ok(())
        } else {
            Err(AlgebraError::RegistryMismatch { left: self.registry, right: other.registry })
        }
    }

    pub(crate) fn add_term(&mut self, m: SuperMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`, assuming the registries agree.
    pub(crate) fn add_scaled_assign(&mut self, other: &SuperPolynomial, c: &Q) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, &Q::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, &-Q::one());
        Ok(out)
    }

    pub fn scale(&self, r: &Q) -> Self {
        if r.is_zero() {
            return SuperPolynomial::zero(self.registry);
        }
        SuperPolynomial {
            registry: self.registry,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = SuperPolynomial::zero(self.registry);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((negative, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// `[a, b]_s = ab − (−1)^{d(a)d(b)} ba` for parity-homogeneous operands.
    pub fn supercommutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let (pa, pb) = match (self.parity(), other.parity()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(AlgebraError::NonHomogeneous),
        };
        let ab = self.mul_unchecked(other);
        let ba = other.mul_unchecked(self);
        let r = if pa.swap_is_negative(pb) { ab.try_add(&ba) } else { ab.try_sub(&ba) };
        r
    }

    /// Total degree of the highest term (0 for constants and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(SuperMonomial::degree).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, registry: &'a Registry) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, registry }
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    /// Panics if the registries differ; use [`SuperPolynomial::try_add`] to handle that.
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.try_add(rhs).expect("registry mismatch")
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.try_sub(rhs).expect("registry mismatch")
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.try_mul(rhs).expect("registry mismatch")
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&-Q::one())
    }
}

/// Text form `c * b[label]^e * f[label] ± …`, fermionic factors ascending.
pub struct PolyDisplay<'a> {
    poly: &'a SuperPolynomial,
    registry: &'a Registry,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c.abs())?;
            for &(id, e) in m.bosonic() {
                match self.registry.label(GenKind::Bosonic, id) {
                    Some(l) => write!(f, " * b[{l}]")?,
                    None => write!(f, " * b[#{id}]")?,
                }
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
            for id in m.fermionic().iter() {
                match self.registry.label(GenKind::Fermionic, id) {
                    Some(l) => write!(f, " * f[{l}]")?,
                    None => write!(f, " * f[#{id}]")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::GenLabel;
    use alloc::format;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn setup(nb: u32, nf: u32) -> (Registry, Vec<SuperPolynomial>, Vec<SuperPolynomial>) {
        let mut r = Registry::new();
        let mut b = Vec::new();
        let mut f = Vec::new();
        for i in 0..nb {
            let g = r.allocate(GenKind::Bosonic, GenLabel::new("b", &[i])).unwrap();
            b.push(SuperPolynomial::generator(&r, &g));
        }
        for i in 0..nf {
            let g = r.allocate(GenKind::Fermionic, GenLabel::new("f", &[i])).unwrap();
            f.push(SuperPolynomial::generator(&r, &g));
        }
        (r, b, f)
    }

    #[test]
    fn fermionic_square_is_zero() {
        let (_, _, f) = setup(0, 2);
        assert!((&f[0] * &f[0]).is_zero());
    }

    #[test]
    fn fermions_anticommute() {
        let (_, _, f) = setup(0, 2);
        let ab = &f[0] * &f[1];
        let ba = &f[1] * &f[0];
        assert_eq!(ab, -&ba);
        assert!(f[0].supercommutator(&f[1]).unwrap().is_zero());
    }

    #[test]
    fn reversed_pair_has_coefficient_minus_one() {
        let (r, _, f) = setup(0, 2);
        let ba = &f[1] * &f[0];
        let (m, c) = ba.terms().next().unwrap();
        assert_eq!(m.fermionic().iter().collect::<Vec<_>>(), [0, 1]);
        assert_eq!(*c, -Q::one());
        assert_eq!(format!("{}", ba.display(&r)), "-1 * f[f:0] * f[f:1]");
    }

    #[test]
    fn bosons_commute() {
        let (_, b, _) = setup(2, 0);
        assert!(b[0].supercommutator(&b[1]).unwrap().is_zero());
    }

    #[test]
    fn add_scale_laws() {
        let (r, b, f) = setup(1, 1);
        let a = &(&b[0] * &f[0]) + &SuperPolynomial::from_integer(r.id(), 3);
        let zero = SuperPolynomial::zero(r.id());
        assert_eq!(&a + &zero, a);
        assert!((&a + &a.scale(&-Q::one())).is_zero());
        let m = b[0].scale(&Q::from_integer(3.into()));
        assert_eq!(m.scale(&q(2, 3)), b[0].scale(&Q::from_integer(2.into())));
    }

    #[test]
    fn mixed_parity_supercommutator_rejected() {
        let (_, b, f) = setup(1, 1);
        let mixed = &b[0] + &f[0];
        assert_eq!(mixed.supercommutator(&f[0]), Err(AlgebraError::NonHomogeneous));
    }

    #[test]
    fn registries_do_not_mix() {
        let (_, b1, _) = setup(1, 0);
        let (_, b2, _) = setup(1, 0);
        assert!(matches!(b1[0].try_mul(&b2[0]), Err(AlgebraError::RegistryMismatch { .. })));
    }

    fn arb_poly(r: RegistryId, nb: u32, nf: u32) -> impl Strategy<Value = SuperPolynomial> {
        let term = (
            proptest::collection::vec((0..nb, 1u32..3), 0..3),
            proptest::collection::vec(0..nf, 0..4),
            -3i64..4,
        );
        proptest::collection::vec(term, 0..5).prop_map(move |ts| {
            let mut p = SuperPolynomial::zero(r);
            for (b, f, c) in ts {
                if let Some((neg, m)) = SuperMonomial::from_parts(&b, &f) {
                    let c = Q::from_integer(c.into());
                    p.add_term(m, if neg { -c } else { c });
                }
            }
            p
        })
    }

    /// Keeps only the terms of one parity.
    fn project(p: &SuperPolynomial, parity: Parity) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(p.registry());
        for (m, c) in p.terms() {
            if m.parity() == parity {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    proptest! {
        #[test]
        fn graded_commutativity_and_parity(
            (a, b, pa, pb) in {
                let r = RegistryId(u32::MAX);
                (arb_poly(r, 3, 32), arb_poly(r, 3, 32), any::<bool>(), any::<bool>())
            }
        ) {
            let pa = if pa { Parity::Odd } else { Parity::Even };
            let pb = if pb { Parity::Odd } else { Parity::Even };
            let a = project(&a, pa);
            let b = project(&b, pb);
            let ab = &a * &b;
            let ba = &b * &a;
            let expected = if pa.swap_is_negative(pb) { -&ba } else { ba };
            prop_assert_eq!(&ab, &expected);
            if !ab.is_zero() {
                prop_assert_eq!(ab.parity(), Some(pa.add(pb)));
            }
            prop_assert!(a.supercommutator(&b).unwrap().is_zero());
        }

        #[test]
        fn associativity(
            (a, b, c) in {
                let r = RegistryId(u32::MAX - 1);
                (arb_poly(r, 3, 10), arb_poly(r, 3, 10), arb_poly(r, 3, 10))
            }
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn distributivity(
            (a, b, c) in {
                let r = RegistryId(u32::MAX - 2);
                (arb_poly(r, 2, 8), arb_poly(r, 2, 8), arb_poly(r, 2, 8))
            }
        ) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
