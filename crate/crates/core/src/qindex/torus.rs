use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::QSeries;
use crate::symfun::factorial;
use crate::{Error, Q};

type Laurent = BTreeMap<Vec<i32>, Q>;

/// `Σ_{j ≤ N} L_j(z₁..z_n) q^j` with Laurent polynomials `L_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusQSeries {
    n: usize,
    coeffs: Vec<Laurent>,
}

fn add_into(target: &mut Laurent, exps: Vec<i32>, c: Q) {
    if c.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match target.entry(exps) {
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

fn shifted(l: &Laurent, alpha: &[i32], c: &Q) -> Vec<(Vec<i32>, Q)> {
    l.iter().map(|(e, v)| (e.iter().zip(alpha).map(|(a, b)| a + b).collect(), v * c)).collect()
}

/// Exponent vector of `z_i⁻¹ z_j` (1-based), zero when `i = j`.
pub(crate) fn ratio_exponent(n: usize, i: usize, j: usize) -> Vec<i32> {
    let mut v = alloc::vec![0; n];
    v[i - 1] -= 1;
    v[j - 1] += 1;
    v
}

impl TorusQSeries {
    pub fn one(n: usize, order: usize) -> Self {
        let mut coeffs = alloc::vec![Laurent::new(); order + 1];
        coeffs[0].insert(alloc::vec![0; n], Q::one());
        TorusQSeries { n, coeffs }
    }

    /// A `z`-free series.
    pub fn from_qseries(n: usize, s: &QSeries) -> Self {
        let mut t = TorusQSeries { n, coeffs: alloc::vec![Laurent::new(); s.order() + 1] };
        for (j, c) in s.coeffs().iter().enumerate() {
            add_into(&mut t.coeffs[j], alloc::vec![0; n], c.clone());
        }
        t
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^exps q^j`.
    pub fn coeff(&self, j: usize, exps: &[i32]) -> Q {
        self.coeffs.get(j).and_then(|l| l.get(exps)).cloned().unwrap_or_else(Q::zero)
    }

    /// Number of nonzero `(j, z-monomial)` coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().map(BTreeMap::len).sum()
    }

    /// Multiplies in place by `1 − c z^α q^k`.
    pub fn mul_factor(&mut self, c: &Q, alpha: &[i32], k: usize) {
        assert_eq!(alpha.len(), self.n);
        for j in (k..=self.order()).rev() {
            let add = shifted(&self.coeffs[j - k], alpha, &-c);
            for (e, v) in add {
                add_into(&mut self.coeffs[j], e, v);
            }
        }
    }

    /// Multiplies in place by `1 / (1 − c z^α q^k)`, `k ≥ 1`.
    pub fn div_factor(&mut self, c: &Q, alpha: &[i32], k: usize) {
        assert!(k >= 1, "1/(1 − c z^α) is not a power series in q");
        assert_eq!(alpha.len(), self.n);
        for j in k..=self.order() {
            let add = shifted(&self.coeffs[j - k], alpha, c);
            for (e, v) in add {
                add_into(&mut self.coeffs[j], e, v);
            }
        }
    }

    /// Multiplies by `(c z^α q^a; q)_∞ = Π_{i ≥ 0} (1 − c z^α q^{a+i})`.
    pub fn mul_pochhammer(&mut self, c: &Q, alpha: &[i32], a: usize) {
        for k in a..=self.order() {
            self.mul_factor(c, alpha, k);
        }
    }

    pub fn mul(&self, other: &TorusQSeries) -> TorusQSeries {
        assert_eq!(self.n, other.n);
        let order = self.order().min(other.order());
        let mut out = TorusQSeries { n: self.n, coeffs: alloc::vec![Laurent::new(); order + 1] };
        for i in 0..=order {
            for j in 0..=order - i {
                for (ea, ca) in &self.coeffs[i] {
                    for (eb, cb) in &other.coeffs[j] {
                        let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                        add_into(&mut out.coeffs[i + j], e, ca * cb);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Q) -> TorusQSeries {
        let mut out = TorusQSeries { n: self.n, coeffs: alloc::vec![Laurent::new(); self.order() + 1] };
        for (j, l) in self.coeffs.iter().enumerate() {
            for (e, c) in l {
                add_into(&mut out.coeffs[j], e.clone(), c * r);
            }
        }
        out
    }

    /// The `z`-degree-zero part, i.e. the integral over the compact torus.
    pub fn constant_term(&self) -> QSeries {
        let zero = alloc::vec![0; self.n];
        QSeries::from_coeffs(self.coeffs.iter().map(|l| l.get(&zero).cloned().unwrap_or_else(Q::zero)).collect())
    }
}

fn weyl_factor(n: usize, order: usize) -> TorusQSeries {
    let mut t = TorusQSeries::one(n, order);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                t.mul_factor(&Q::one(), &ratio_exponent(n, i, j), 0);
            }
        }
    }
    t
}

/// `(1/n!) CT[ Π_{i≠j}(1 − z_i⁻¹z_j) Π_{c ∈ ferm} Π_{i,j}(1 − z_i⁻¹z_j q^c) / Π_{c ∈ bos} Π_{i,j}(1 − z_i⁻¹z_j q^c) ]`:
/// the index of the invariants of `n × n` matrices, one per listed charge.
pub fn invariant_index(n: usize, bosonic: &[usize], fermionic: &[usize], order: usize) -> QSeries {
    let mut t = weyl_factor(n, order);
    for &c in fermionic {
        for i in 1..=n {
            for j in 1..=n {
                t.mul_factor(&Q::one(), &ratio_exponent(n, i, j), c);
            }
        }
    }
    for &c in bosonic {
        for i in 1..=n {
            for j in 1..=n {
                t.div_factor(&Q::one(), &ratio_exponent(n, i, j), c);
            }
        }
    }
    t.constant_term().scale(&Q::new(1.into(), factorial(n).into()))
}

/// Index of the invariants of one fermionic matrix per charge `1..=order`;
/// `n ≤ 3`, `order ≤ 10` unless `force`.
pub fn molien_weyl_index(n: usize, order: usize, force: bool) -> Result<QSeries, Error> {
    if !force {
        if n > 3 {
            return Err(Error::TooLarge { what: "n", value: n, cap: 3 });
        }
        if order > 10 {
            return Err(Error::TooLarge { what: "order", value: order, cap: 10 });
        }
    }
    let charges: Vec<usize> = (1..=order).collect();
    Ok(invariant_index(n, &[], &charges, order))
}

/// Constant terms of the two forms of the Andrews integrand against `(q;q)_∞^{1−n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndrewsReport {
    pub n: usize,
    /// `CT Π_{i<j} (z_i⁻¹z_j; q)_∞ (q z_j⁻¹z_i; q)_∞`.
    pub split: QSeries,
    /// `CT (1/n!) Π_{i≠j} (z_i⁻¹z_j; q)_∞`.
    pub symmetrized: QSeries,
    pub expected: QSeries,
}

impl AndrewsReport {
    pub fn holds(&self) -> bool {
        self.split == self.expected && self.symmetrized == self.expected
    }
}

pub fn andrews_ct_check(n: usize, order: usize) -> AndrewsReport {
    let mut split = TorusQSeries::one(n, order);
    let mut sym = TorusQSeries::one(n, order);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            sym.mul_pochhammer(&Q::one(), &ratio_exponent(n, i, j), 0);
            if i < j {
                split.mul_pochhammer(&Q::one(), &ratio_exponent(n, i, j), 0);
                split.mul_pochhammer(&Q::one(), &ratio_exponent(n, j, i), 1);
            }
        }
    }
    let expected = QSeries::euler(order).pow(1 - n as i64).expect("unit constant term");
    AndrewsReport {
        n,
        split: split.constant_term(),
        symmetrized: sym.constant_term().scale(&Q::new(1.into(), factorial(n).into())),
        expected,
    }
}

/// Charges of bosonic and fermionic generators of a free supercommutative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorShape {
    pub bosonic: Vec<usize>,
    pub fermionic: Vec<usize>,
}

impl GeneratorShape {
    /// One boson and one fermion of charge `c`.
    pub fn pair(c: usize) -> Self {
        GeneratorShape { bosonic: alloc::vec![c], fermionic: alloc::vec![c] }
    }

    /// Entries of one bosonic and one fermionic `n × n` matrix for each charge.
    pub fn matrix_entries(n: usize, charges: &[usize]) -> Self {
        let mut s = GeneratorShape::default();
        for &c in charges {
            for _ in 0..n * n {
                s.bosonic.push(c);
                s.fermionic.push(c);
            }
        }
        s
    }
}

/// `Π_{bos} 1/(1 − q^c) · Π_{ferm} (1 − q^c)`: the Poincaré series with the
/// fermionic variable set equal to the bosonic one and its sign flipped.
pub fn free_index(shape: &GeneratorShape, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for &c in &shape.fermionic {
        if c >= 1 {
            s.mul_one_minus(&Q::one(), c);
        } else {
            s = QSeries::zero(order);
        }
    }
    for &c in &shape.bosonic {
        assert!(c >= 1, "a charge-0 boson has no Poincaré series");
        s.div_one_minus(&Q::one(), c);
    }
    s
}

pub fn free_index_identity_check(shape: &GeneratorShape, order: usize) -> bool {
    free_index(shape, order).is_one()
}
