//! Permutations of `{1..m}`, colorings, and parenthesized cycle strings.
//!
//! Points are 1-based throughout the public API. A cycle `(a b c)` means
//! `a ↦ b ↦ c ↦ a`.

use alloc::vec::Vec;
use core::fmt;

/// A bijection of `{1..m}`, stored by its one-line images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm { images: (1..=m).collect() }
    }

    /// From the one-line word `σ(1), σ(2), …, σ(m)`.
    pub fn from_one_line(images: &[usize]) -> Option<Self> {
        let m = images.len();
        let mut seen = alloc::vec![false; m + 1];
        for &x in images {
            if x == 0 || x > m || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { images: images.to_vec() })
    }

    /// From disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (1..=m).collect();
        let mut seen = alloc::vec![false; m + 1];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 || a > m || seen[a] {
                    return None;
                }
                seen[a] = true;
                images[a - 1] = c[(k + 1) % c.len()];
            }
        }
        Some(Perm { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different degrees");
        Perm { images: other.images.iter().map(|&x| self.images[x - 1]).collect() }
    }

    /// Whether the permutation is odd.
    pub fn is_odd(&self) -> bool {
        let mut seen = alloc::vec![false; self.len() + 1];
        let mut transpositions = 0;
        for start in 1..=self.len() {
            if seen[start] {
                continue;
            }
            let mut x = start;
            let mut len = 0;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    pub fn sign(&self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// Canonical cycle display `λ(σ)`: each cycle starts at its minimum,
    /// cycles ordered by leader, fixed points included.
    pub fn lambda(&self) -> PString {
        let mut seen = alloc::vec![false; self.len() + 1];
        let mut cycles = Vec::new();
        for start in 1..=self.len() {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            cycles.push(c);
        }
        PString { cycles, tail: None }
    }

    /// Partial string `μ(σ)`: the cycle through the last point `m`, written
    /// `(B m)`, is removed from `λ(σ)` and `B` is placed at the end.
    pub fn mu(&self) -> PString {
        let m = self.len();
        let mut lam = self.lambda();
        let pos = lam.cycles.iter().position(|c| c.contains(&m)).expect("m lies on a cycle");
        let mut c = lam.cycles.remove(pos);
        let at = c.iter().position(|&x| x == m).unwrap();
        c.rotate_left(at + 1);
        c.pop();
        lam.tail = Some(c);
        lam
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.lambda().cycles.len()
    }

    /// All of `S_m` in lexicographic one-line order.
    pub fn all(m: usize) -> AllPerms {
        AllPerms { next: Some((1..=m).collect()) }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.lambda(), f)
    }
}

/// Lexicographic enumeration of `S_m`.
pub struct AllPerms {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm { images: cur })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A parenthesized string `(w₁)(w₂)⋯(w_r)` with an optional open tail `w_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PString {
    pub cycles: Vec<Vec<usize>>,
    pub tail: Option<Vec<usize>>,
}

impl PString {
    /// The underlying string: all cycles then the tail, parentheses dropped.
    pub fn word(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.cycles.iter().flatten().copied().collect();
        if let Some(t) = &self.tail {
            w.extend_from_slice(t);
        }
        w
    }
}

impl fmt::Display for PString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        if let Some(t) = &self.tail {
            for (k, x) in t.iter().enumerate() {
                f.write_str(if k == 0 && self.cycles.is_empty() { "" } else { " " })?;
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// A map from points `{1..m}` to colors; `true` is fermionic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    fermionic: Vec<bool>,
}

impl Coloring {
    pub fn new(fermionic: Vec<bool>) -> Self {
        Coloring { fermionic }
    }

    /// `C_{e,f}`: points `1..=e` bosonic, `e+1..=e+f` fermionic.
    pub fn standard(e: usize, f: usize) -> Self {
        Coloring { fermionic: (0..e + f).map(|k| k >= e).collect() }
    }

    pub fn len(&self) -> usize {
        self.fermionic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fermionic.is_empty()
    }

    pub fn is_fermionic(&self, point: usize) -> bool {
        self.fermionic[point - 1]
    }

    pub fn set(&mut self, point: usize, fermionic: bool) {
        self.fermionic[point - 1] = fermionic;
    }

    /// Number of fermionic points in `word`.
    pub fn fermionic_count(&self, word: &[usize]) -> usize {
        word.iter().filter(|&&p| self.is_fermionic(p)).count()
    }

    /// `ε_C(w)`: the sign of sorting the fermionic subsequence of `w`, as
    /// `true` for `-1`.
    pub fn epsilon_is_negative(&self, word: &[usize]) -> bool {
        let ferm: Vec<usize> = word.iter().copied().filter(|&p| self.is_fermionic(p)).collect();
        inversion_parity(&ferm)
    }

    pub fn epsilon(&self, word: &[usize]) -> i64 {
        if self.epsilon_is_negative(word) {
            -1
        } else {
            1
        }
    }
}

/// Parity of the inversion count, via cycle structure of the sorting permutation.
pub fn inversion_parity(seq: &[usize]) -> bool {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_by_key(|&k| seq[k]);
    // idx[r] = position of the r-th smallest; parity of this permutation
    let mut seen = alloc::vec![false; seq.len()];
    let mut odd = false;
    for s in 0..seq.len() {
        if seen[s] {
            continue;
        }
        let mut x = s;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = idx[x];
            len += 1;
        }
        odd ^= (len - 1) % 2 == 1;
    }
    odd
}
