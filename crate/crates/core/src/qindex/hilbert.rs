use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{fmt_terms, QSeries};
use crate::freetrace::{Letter, TraceExpression};
use crate::identities::{evaluate_all, trace_monomials, MatrixAssignment, MAX_CHARGE, MAX_N};
use crate::linalg::{matrix_rank, polynomial_rank};
use crate::{Error, Q};

/// Letters with their charges, and whether the matrices are traceless.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSpec {
    pub letters: Vec<(Letter, usize)>,
    pub traceless: bool,
}

impl VariableSpec {
    /// One fermionic matrix of charge 1.
    pub fn single_fermion() -> Self {
        VariableSpec { letters: alloc::vec![(Letter::X(1), 1)], traceless: false }
    }

    /// Fermionic `x_k` of the given charges.
    pub fn fermions(charges: &[usize], traceless: bool) -> Self {
        VariableSpec {
            letters: charges.iter().enumerate().map(|(k, &c)| (Letter::X(k as u32 + 1), c)).collect(),
            traceless,
        }
    }

    fn min_trace_len(&self) -> usize {
        if self.traceless {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertMode {
    /// Trace monomials evaluated on `n × n` matrices.
    Invariants,
    /// Trace monomials times words, evaluated as matrices.
    Equivariants,
    /// Number of even trace monomials, no evaluation.
    Free,
}

fn words_of_charge(letters: &[(Letter, usize)], charge: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(letters: &[(Letter, usize)], rest: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for &(l, c) in letters {
            if c >= 1 && c <= rest {
                cur.push(l);
                rec(letters, rest - c, cur, out);
                cur.pop();
            }
        }
    }
    rec(letters, charge, &mut cur, &mut out);
    out
}

/// Graded dimensions up to `order`: ranks of evaluated monomials per charge.
/// Caps `n ≤ 3`, `order ≤ 8` unless `force`.
pub fn hilbert_series_by_rank(
    mode: HilbertMode,
    n: usize,
    vars: &VariableSpec,
    order: usize,
    force: bool,
) -> Result<QSeries, Error> {
    if !force {
        if n > MAX_N {
            return Err(Error::TooLarge { what: "n", value: n, cap: MAX_N });
        }
        if order > MAX_CHARGE {
            return Err(Error::TooLarge { what: "order", value: order, cap: MAX_CHARGE });
        }
    }
    let sets = trace_monomials(&vars.letters, order, vars.min_trace_len());
    let mut out = QSeries::zero(order);
    if mode == HilbertMode::Free {
        for s in &sets {
            out.set(s.charge, Q::from_integer(s.even.len().into()));
        }
        return Ok(out);
    }
    let asg = MatrixAssignment::generic(vars.letters.iter().map(|&(l, _)| l), n, vars.traceless);
    for l in 0..=order {
        let dim = match mode {
            HilbertMode::Invariants => {
                let all: Vec<TraceExpression> = sets[l].even.iter().chain(&sets[l].odd).cloned().collect();
                let vals = evaluate_all(&all, &asg)?;
                polynomial_rank(vals.iter().filter_map(|v| v.as_scalar()))
            }
            HilbertMode::Equivariants => {
                let mut elems = Vec::new();
                for a in 0..=l {
                    let words = words_of_charge(&vars.letters, l - a);
                    for t in sets[a].even.iter().chain(&sets[a].odd) {
                        for w in &words {
                            elems.push(t * &TraceExpression::word(w));
                        }
                    }
                }
                let mats: Vec<_> = elems
                    .iter()
                    .map(|e| super::super::identities::evaluate_matrix(e, &asg))
                    .collect::<Result<_, _>>()?;
                matrix_rank(&mats)
            }
            HilbertMode::Free => unreachable!(),
        };
        out.set(l, Q::from_integer(dim.into()));
    }
    Ok(out)
}

/// A Laurent polynomial in `q` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn one() -> Self {
        LaurentPoly::monomial(0, Q::one())
    }

    pub fn monomial(k: i64, c: Q) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(k, c);
        p
    }

    fn add_term(&mut self, k: i64, c: Q) {
        let e = self.coeffs.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    /// `1 + q^k`.
    pub fn one_plus(k: i64) -> LaurentPoly {
        LaurentPoly::one().add(&LaurentPoly::monomial(k, Q::one()))
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Whether this equals `s` as a series: no negative powers, and
    /// coefficients agree through the order of `s`.
    pub fn agrees_with(&self, s: &QSeries) -> bool {
        if self.min_exponent().is_some_and(|k| k < 0) {
            return false;
        }
        (0..=s.order()).all(|k| self.coeff(k as i64) == s.coeff(k))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().map(|(&k, c)| (k, c)), "q")
    }
}

/// Graded dimensions for one generic fermionic `n × n` matrix, against the
/// closed forms.
#[derive(Clone, Debug)]
pub struct DynkinSeriesReport {
    pub n: usize,
    pub invariants: QSeries,
    /// `Π_{i=1}^{n} (1 + q^{2i−1})`.
    pub invariants_expected: LaurentPoly,
    pub equivariants: QSeries,
    /// `Π_{i=1}^{n−1} (1 + q^{2i−1}) · Σ_{i=0}^{2n−1} q^i`.
    pub free_module_reading: LaurentPoly,
    /// `Π_{i=0}^{n−1} (1 + q^{2i−1}) · Σ_{i=0}^{2n−1} (1 + q^i)`, read literally.
    pub literal_reading: LaurentPoly,
}

impl DynkinSeriesReport {
    pub fn invariants_match(&self) -> bool {
        self.invariants_expected.agrees_with(&self.invariants)
    }

    pub fn free_module_reading_matches(&self) -> bool {
        self.free_module_reading.agrees_with(&self.equivariants)
    }

    pub fn literal_reading_matches(&self) -> bool {
        self.literal_reading.agrees_with(&self.equivariants)
    }
}

/// Computed at order `n² + 2`, past the top degree `n²` of both closed forms.
pub fn dynkin_series_report(n: usize) -> Result<DynkinSeriesReport, Error> {
    if n == 0 || n > MAX_N {
        return Err(Error::TooLarge { what: "n", value: n, cap: MAX_N });
    }
    let order = n * n + 2;
    let vars = VariableSpec::single_fermion();
    let invariants = hilbert_series_by_rank(HilbertMode::Invariants, n, &vars, order, true)?;
    let equivariants = hilbert_series_by_rank(HilbertMode::Equivariants, n, &vars, order, true)?;
    let n = n as i64;
    let prod = |from: i64, to: i64| (from..=to).fold(LaurentPoly::one(), |acc, i| acc.mul(&LaurentPoly::one_plus(2 * i - 1)));
    let geometric = (0..2 * n).fold(LaurentPoly::default(), |acc, i| acc.add(&LaurentPoly::monomial(i, Q::one())));
    let literal_sum = (0..2 * n).fold(LaurentPoly::default(), |acc, i| acc.add(&LaurentPoly::one_plus(i)));
    Ok(DynkinSeriesReport {
        n: n as usize,
        invariants,
        invariants_expected: prod(1, n),
        equivariants,
        free_module_reading: prod(1, n - 1).mul(&geometric),
        literal_reading: prod(0, n - 1).mul(&literal_sum),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn one_fermion_invariants() {
        let s = hilbert_series_by_rank(HilbertMode::Invariants, 2, &VariableSpec::single_fermion(), 8, false).unwrap();
        assert_eq!(s, QSeries::from_integers(8, &[1, 1, 0, 1, 1]));
    }

    #[test]
    fn dynkin_readings() {
        for n in 1..=3 {
            let r = dynkin_series_report(n).unwrap();
            assert!(r.invariants_match(), "n={n}: {}", r.invariants);
            assert!(r.free_module_reading_matches(), "n={n}: {}", r.equivariants);
            assert!(!r.literal_reading_matches());
        }
        let r = dynkin_series_report(2).unwrap();
        assert_eq!(format!("{}", r.free_module_reading), "1 + 2*q + 2*q^2 + 2*q^3 + q^4");
        assert_eq!(r.literal_reading.min_exponent(), Some(-1));
    }

    #[test]
    fn free_mode_matches_charge_table() {
        let vars = VariableSpec::fermions(&[1, 2, 3, 4, 5, 6, 7], true);
        let s = hilbert_series_by_rank(HilbertMode::Free, 0, &vars, 7, false).unwrap();
        assert_eq!(s, QSeries::from_integers(7, &[1, 0, 0, 1, 1, 3, 6, 11]));
    }

    #[test]
    fn traceless_pair_deficit() {
        let vars = VariableSpec::fermions(&[1, 2], true);
        let free = hilbert_series_by_rank(HilbertMode::Free, 2, &vars, 6, false).unwrap();
        let inv = hilbert_series_by_rank(HilbertMode::Invariants, 2, &vars, 6, false).unwrap();
        // even part only in the free count; ranks include both parities
        assert!(inv.coeff(0) == free.coeff(0));
        assert!((0..=6).all(|l| inv.coeff(l) <= Q::from_integer(40.into())));
    }
}
