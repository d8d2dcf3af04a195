//! Exact rank of sparse rational vectors.
//!
//! Rows are scaled to primitive integer vectors and reduced fraction-free
//! against an echelon basis, so no rational arithmetic happens in the loop.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::gmatrix::SuperMatrix;
use crate::superalg::{SuperMonomial, SuperPolynomial};
use crate::Q;

type Row = Vec<(usize, BigInt)>;

/// Incremental row echelon basis over ℚ with deterministic pivoting
/// (the first nonzero column of each reduced row).
#[derive(Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, Row>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row given as `(column, value)` pairs; returns whether it was
    /// independent of the rows added so far.
    pub fn insert(&mut self, row: &[(usize, Q)]) -> bool {
        let mut r = primitive_integer_row(row);
        while let Some(&(lead, _)) = r.first() {
            let Some(p) = self.pivots.get(&lead) else { break };
            r = eliminate(&r, p);
        }
        if r.is_empty() {
            return false;
        }
        let lead = r[0].0;
        self.pivots.insert(lead, r);
        true
    }
}

/// Sorted, gcd-free integer multiple of a rational row with positive lead.
fn primitive_integer_row(row: &[(usize, Q)]) -> Row {
    let mut entries: Vec<(usize, Q)> = row.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
    entries.sort_by_key(|e| e.0);
    // merge duplicate columns
    let mut merged: Vec<(usize, Q)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    let lcm = merged.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: Row = merged.into_iter().map(|(c, v)| (c, (v * Q::from_integer(lcm.clone())).to_integer())).collect();
    normalize(ints)
}

fn normalize(mut r: Row) -> Row {
    let g = r.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        return Vec::new();
    }
    let flip = r[0].1.is_negative();
    for (_, v) in r.iter_mut() {
        *v = &*v / &g;
        if flip {
            *v = -&*v;
        }
    }
    r
}

/// `a·p₀ − p·a₀` where `a₀, p₀` are the leading entries (same column).
fn eliminate(a: &Row, p: &Row) -> Row {
    let a0 = &a[0].1;
    let p0 = &p[0].1;
    let g = a0.gcd(p0);
    let ma = p0 / &g;
    let mp = a0 / &g;
    let mut out: Row = Vec::with_capacity(a.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < a.len() || j < p.len() {
        let ca = a.get(i).map(|e| e.0);
        let cp = p.get(j).map(|e| e.0);
        match (ca, cp) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 * &ma - &p[j].1 * &mp;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &a[i].1 * &ma));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, &a[i].1 * &ma));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(&p[j].1 * &mp)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    normalize(out)
}

/// Assigns dense column ids to keys in first-seen order.
pub struct ColumnIndex<K: Ord> {
    ids: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for ColumnIndex<K> {
    fn default() -> Self {
        ColumnIndex { ids: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> ColumnIndex<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn id(&mut self, k: &K) -> usize {
        let next = self.ids.len();
        *self.ids.entry(k.clone()).or_insert(next)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Rank of a family of sparse vectors indexed by arbitrary keys.
pub fn rank_of<K: Ord + Clone>(vectors: impl IntoIterator<Item = Vec<(K, Q)>>) -> usize {
    let mut cols = ColumnIndex::new();
    let mut basis = EchelonBasis::new();
    for v in vectors {
        let row: Vec<(usize, Q)> = v.into_iter().map(|(k, q)| (cols.id(&k), q)).collect();
        basis.insert(&row);
    }
    basis.rank()
}

/// Dimension of the ℚ-span of some polynomials.
pub fn polynomial_rank<'a>(polys: impl IntoIterator<Item = &'a SuperPolynomial>) -> usize {
    rank_of(polys.into_iter().map(|p| p.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>()))
}

/// Dimension of the ℚ-span of some matrices, viewed entrywise.
pub fn matrix_rank<'a>(mats: impl IntoIterator<Item = &'a SuperMatrix>) -> usize {
    rank_of(mats.into_iter().map(|m| {
        let mut v: Vec<((usize, SuperMonomial), Q)> = Vec::new();
        for (k, e) in m.entries().iter().enumerate() {
            v.extend(e.terms().map(|(mono, c)| ((k, mono.clone()), c.clone())));
        }
        v
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    /// Dense rational Gaussian elimination, the textbook way.
    fn dense_rank(rows: &[Vec<Q>]) -> usize {
        let mut m: Vec<Vec<Q>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in 0..cols {
                        let v = &m[rank][k] * &f;
                        m[r][k] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_examples() {
        assert_eq!(rank_of::<usize>(vec![]), 0);
        assert_eq!(rank_of(vec![vec![(0usize, q(0))]]), 0);
        let half = Q::new(1.into(), 2.into());
        let rows = vec![
            vec![(0usize, q(1)), (1, q(2))],
            vec![(0, half.clone()), (1, q(1))],
            vec![(1, q(3)), (2, half)],
        ];
        assert_eq!(rank_of(rows), 2);
    }

    proptest! {
        #[test]
        fn matches_dense_elimination(entries in proptest::collection::vec(proptest::collection::vec(-2i64..3, 6), 0..8), den in 1i64..4) {
            let rows: Vec<Vec<Q>> = entries.iter().map(|r| r.iter().map(|&v| Q::new(v.into(), den.into())).collect()).collect();
            let sparse = rows.iter().map(|r| r.iter().cloned().enumerate().collect::<Vec<_>>());
            prop_assert_eq!(rank_of(sparse), dense_rank(&rows));
        }
    }
}
