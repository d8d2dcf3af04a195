use alloc::vec::Vec;

use super::Parity;

/// Set of fermionic generator ids, stored as a bitset with no trailing zero words.
///
/// Iteration is in ascending order, which is the canonical order of the
/// exterior-algebra factors of a monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FermionSet {
    words: Vec<u64>,
}

impl FermionSet {
    pub fn new() -> Self {
        FermionSet { words: Vec::new() }
    }

    pub fn singleton(id: u32) -> Self {
        let mut s = FermionSet::new();
        s.insert(id);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(&self, id: u32) -> bool {
        let (w, b) = ((id / 64) as usize, id % 64);
        self.words.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    /// Inserts `id`; returns false if it was already present.
    pub fn insert(&mut self, id: u32) -> bool {
        let (w, b) = ((id / 64) as usize, id % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(wi as u32 * 64 + b)
            })
        })
    }

    pub fn intersects(&self, other: &FermionSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Parity of the number of pairs `(i, j)`, `i ∈ self`, `j ∈ other`, with `i > j`:
    /// the sign of merging the concatenation `self · other` into ascending order.
    pub fn merge_sign_is_negative(&self, other: &FermionSet) -> bool {
        let n = self.words.len();
        // popcount of self strictly above word w
        let mut above = alloc::vec![0u32; n + 1];
        for w in (0..n).rev() {
            above[w] = above[w + 1] + self.words[w].count_ones();
        }
        let mut parity = 0u32;
        for (w, &bw) in other.words.iter().enumerate() {
            if bw == 0 {
                continue;
            }
            let higher_words = if w < n { above[w + 1] } else { 0 };
            let own = self.words.get(w).copied().unwrap_or(0);
            let mut rest = bw;
            while rest != 0 {
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                let mask = if b == 63 { 0 } else { !0u64 << (b + 1) };
                parity += higher_words + (own & mask).count_ones();
            }
        }
        parity % 2 == 1
    }

    /// Disjoint union; callers check [`FermionSet::intersects`] first.
    fn union(&self, other: &FermionSet) -> FermionSet {
        let n = self.words.len().max(other.words.len());
        let mut words = Vec::with_capacity(n);
        for i in 0..n {
            words.push(self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0));
        }
        FermionSet { words }
    }
}

impl FromIterator<u32> for FermionSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut s = FermionSet::new();
        for id in iter {
            s.insert(id);
        }
        s
    }
}

/// A monomial `Π b_i^{e_i} · f_{j1} f_{j2} ⋯` with `j1 < j2 < ⋯`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperMonomial {
    /// Sorted by generator id, exponents nonzero.
    bosonic: Vec<(u32, u32)>,
    fermionic: FermionSet,
}

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial::default()
    }

    pub fn bosonic_generator(id: u32) -> Self {
        SuperMonomial { bosonic: alloc::vec![(id, 1)], fermionic: FermionSet::new() }
    }

    pub fn fermionic_generator(id: u32) -> Self {
        SuperMonomial { bosonic: Vec::new(), fermionic: FermionSet::singleton(id) }
    }

    /// Builds a monomial from unsorted parts. Fermionic ids are taken in the
    /// given order; the returned flag is the sign of sorting them, and `None`
    /// means a fermionic id repeats (the monomial vanishes).
    pub fn from_parts(bosonic: &[(u32, u32)], fermionic: &[u32]) -> Option<(bool, SuperMonomial)> {
        let mut b: Vec<(u32, u32)> = Vec::new();
        for &(id, e) in bosonic {
            if e == 0 {
                continue;
            }
            match b.binary_search_by_key(&id, |p| p.0) {
                Ok(pos) => b[pos].1 += e,
                Err(pos) => b.insert(pos, (id, e)),
            }
        }
        let mut negative = false;
        let mut set = FermionSet::new();
        for (k, &id) in fermionic.iter().enumerate() {
            if !set.insert(id) {
                return None;
            }
            negative ^= fermionic[..k].iter().filter(|&&prev| prev > id).count() % 2 == 1;
        }
        Some((negative, SuperMonomial { bosonic: b, fermionic: set }))
    }

    pub fn bosonic(&self) -> &[(u32, u32)] {
        &self.bosonic
    }

    pub fn fermionic(&self) -> &FermionSet {
        &self.fermionic
    }

    pub fn is_one(&self) -> bool {
        self.bosonic.is_empty() && self.fermionic.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.fermionic.len())
    }

    pub fn degree(&self) -> usize {
        self.bosonic.iter().map(|p| p.1 as usize).sum::<usize>() + self.fermionic.len()
    }

    /// Product `self · other`: `None` if a fermionic generator repeats,
    /// otherwise the monomial and whether the reordering sign is `-1`.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(bool, SuperMonomial)> {
        if self.fermionic.intersects(&other.fermionic) {
            return None;
        }
        let negative = self.fermionic.merge_sign_is_negative(&other.fermionic);
        let fermionic = self.fermionic.union(&other.fermionic);
        let bosonic = merge_exponents(&self.bosonic, &other.bosonic);
        Some((negative, SuperMonomial { bosonic, fermionic }))
    }
}

fn merge_exponents(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inversions_oracle(a: &[u32], b: &[u32]) -> bool {
        let mut count = 0;
        for &i in a {
            for &j in b {
                if i > j {
                    count += 1;
                }
            }
        }
        count % 2 == 1
    }

    #[test]
    fn descending_pair_has_negative_sign() {
        // f_b · f_a with a < b
        let fb = SuperMonomial::fermionic_generator(5);
        let fa = SuperMonomial::fermionic_generator(2);
        let (neg, m) = fb.mul(&fa).unwrap();
        assert!(neg);
        assert_eq!(m.fermionic().iter().collect::<Vec<_>>(), [2, 5]);
        assert!(fa.mul(&fa).is_none());
    }

    #[test]
    fn word_boundary_bits() {
        let a: FermionSet = [63u32, 64, 130].into_iter().collect();
        let b: FermionSet = [0u32, 64 + 1, 127].into_iter().collect();
        let av: Vec<u32> = a.iter().collect();
        let bv: Vec<u32> = b.iter().collect();
        assert_eq!(av, [63, 64, 130]);
        assert_eq!(a.merge_sign_is_negative(&b), inversions_oracle(&av, &bv));
    }

    proptest! {
        #[test]
        fn merge_sign_matches_inversion_count(
            a in proptest::collection::btree_set(0u32..200, 0..12),
            b in proptest::collection::btree_set(0u32..200, 0..12),
        ) {
            let av: Vec<u32> = a.iter().copied().collect();
            let bv: Vec<u32> = b.iter().copied().filter(|x| !a.contains(x)).collect();
            let sa: FermionSet = av.iter().copied().collect();
            let sb: FermionSet = bv.iter().copied().collect();
            prop_assert_eq!(sa.merge_sign_is_negative(&sb), inversions_oracle(&av, &bv));
        }

        #[test]
        fn from_parts_sign_is_sorting_parity(ids in proptest::collection::btree_set(0u32..40, 0..8), seed in any::<u64>()) {
            let mut v: Vec<u32> = ids.into_iter().collect();
            // deterministic shuffle
            let mut s = seed;
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut inv = 0;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if v[i] > v[j] { inv += 1; }
                }
            }
            let (neg, _) = SuperMonomial::from_parts(&[], &v).unwrap();
            prop_assert_eq!(neg, inv % 2 == 1);
        }
    }
}
