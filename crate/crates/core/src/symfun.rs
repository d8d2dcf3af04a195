//! Partitions, hook lengths and the combinatorics of `S_m` used for
//! codimensions.

use alloc::vec::Vec;

use crate::perm::Perm;

/// A partition as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut rows: Vec<usize>) -> Self {
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Partition { rows }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.rows.first().copied().unwrap_or(0);
        Partition { rows: (0..width).map(|j| self.rows.iter().filter(|&&r| r > j).count()).collect() }
    }
}

/// All partitions of `m` in reverse-lexicographic order, `(m)` first.
pub fn partitions(m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { rows: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    rec(m, m, &mut cur, &mut out);
    out
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// `m! / Π hooks`: the dimension of the irreducible `S_m`-module of shape `λ`.
pub fn hook_dimension(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &r) in lambda.rows.iter().enumerate() {
        for j in 0..r {
            let arm = r - j - 1;
            let leg = conj.rows[j] - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    factorial(lambda.size()) / hooks
}

/// `c_m(M_n) = Σ_{λ ⊢ m, ht(λ) ≤ n} (dim λ)²`.
pub fn codimension(m: usize, n: usize) -> u128 {
    partitions(m).iter().filter(|l| l.height() <= n).map(|l| hook_dimension(l).pow(2)).sum()
}

/// `Σ_{λ ⊢ m, ht(λ) > n} (dim λ)² = m! − c_m(M_n)`.
pub fn antisymmetrizer_ideal_dim(m: usize, n: usize) -> u128 {
    partitions(m).iter().filter(|l| l.height() > n).map(|l| hook_dimension(l).pow(2)).sum()
}

/// Length of the longest strictly decreasing subsequence, by patience sorting.
pub fn longest_decreasing(seq: &[usize]) -> usize {
    // piles hold the last value of the best decreasing run of each length;
    // reading the values negated turns "decreasing" into "increasing"
    let mut tops: Vec<isize> = Vec::new();
    for &x in seq {
        let v = -(x as isize);
        let pos = tops.partition_point(|&t| t < v);
        if pos == tops.len() {
            tops.push(v);
        } else {
            tops[pos] = v;
        }
    }
    tops.len()
}

/// Whether `σ` has no decreasing subsequence of length `d`.
pub fn is_d_good(sigma: &Perm, d: usize) -> bool {
    longest_decreasing(sigma.one_line()) < d
}

/// Number of `d`-good permutations in `S_m`.
pub fn count_d_good(m: usize, d: usize) -> u128 {
    Perm::all(m).filter(|s| is_d_good(s, d)).count() as u128
}

/// `C_m = binom(2m, m) / (m + 1)`.
pub fn catalan(m: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..m as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
