//! The sweep used by the property suites: groups of local specs sharing
//! `p`, `n` and `m`, as stand-ins for the primes above `p` of one global
//! representation.

use alloc::vec::Vec;

use super::{Basis, Draws, GenSpec};
use crate::phinmod::RankOneData;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
const DIMS: [usize; 4] = [2, 3, 4, 5];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusGroup {
    pub specs: Vec<GenSpec>,
}

/// `total` specs split into groups of one to three. Group `g` has
/// dimension `2 + g mod 4`; everything else is drawn from `seed`.
pub fn corpus(total: usize, seed: u64) -> Vec<CorpusGroup> {
    let mut draws = Draws::new(seed);
    let mut groups = Vec::new();
    let mut made = 0;
    while made < total {
        let n = DIMS[groups.len() % DIMS.len()];
        let p = PRIMES[draws.below(PRIMES.len() as u64) as usize];
        let m = draws.below(5) as i64 - 1;
        let size = (1 + draws.below(3) as usize).min(total - made);
        let specs = (0..size)
            .map(|_| {
                let e = 1 + draws.below(2) as usize;
                let weights = (0..e).map(|_| weights(&mut draws, n, m)).collect();
                let planted_l = loop {
                    let l = draws.rational();
                    if !l.is_zero() {
                        break l;
                    }
                };
                GenSpec {
                    p,
                    n,
                    m,
                    weights,
                    planted_l,
                    allow_degenerate: false,
                    seed: draws.raw(),
                    basis: Basis::Seeded,
                }
            })
            .collect();
        made += size;
        groups.push(CorpusGroup { specs });
    }
    groups
}

fn weights(draws: &mut Draws, n: usize, m: i64) -> Vec<i64> {
    let mut k = alloc::vec![0; n];
    k[n - 1] = m + 1 + draws.below(3) as i64;
    k[n - 2] = m - 1 - draws.below(3) as i64;
    for i in (0..n - 2).rev() {
        k[i] = k[i + 1] - draws.below(3) as i64;
    }
    k
}

/// Rank-one characters `(a_σ; b)` with `a_σ ∈ 1..=4`, `e ∈ {1, 2}` and the
/// given norm exponent, paired with a prime.
pub fn rank_one_family(count: usize, norm_exponent: i64, seed: u64) -> Vec<(RankOneData, u64)> {
    let mut draws = Draws::new(seed);
    (0..count)
        .map(|_| {
            let e = 1 + draws.below(2) as usize;
            let exponents = (0..e).map(|_| 1 + draws.below(4) as i64).collect();
            let p = PRIMES[draws.below(PRIMES.len() as u64) as usize];
            (RankOneData::new(exponents, norm_exponent), p)
        })
        .collect()
}
