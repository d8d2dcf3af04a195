//! Seeded random inputs for the randomized checks.

use grassmat_core::perm::Perm;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// A permutation with its coloring split `(e, f)` and a matrix size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1Case {
    pub sigma: Perm,
    pub e: usize,
    pub f: usize,
    pub n: usize,
}

/// `count` cases with `2 ≤ m ≤ max_m` and `n ∈ {2, 3}`, reproducible from `seed`.
pub fn random_rank1_cases(seed: u64, count: usize, max_m: usize) -> Vec<Rank1Case> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(2..=max_m);
            let mut images: Vec<usize> = (1..=m).collect();
            images.shuffle(&mut rng);
            let e = rng.gen_range(0..=m);
            Rank1Case {
                sigma: Perm::from_one_line(&images).expect("a shuffle is a permutation"),
                e,
                f: m - e,
                n: rng.gen_range(2..=3),
            }
        })
        .collect()
}
