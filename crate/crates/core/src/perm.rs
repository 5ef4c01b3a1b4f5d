//! Signed permutation and unshuffle enumeration.
//!
//! Alternated compositions sum over all of `S_N` with signs; the Jacobi-type
//! identities sum over `(ℓ, r)`-unshuffles, the permutations that stay
//! increasing inside each of the two blocks. Indices are 0-based throughout.

use itertools::Itertools;
use serde::Serialize;

/// Parity of a permutation given as a list of distinct values; `+1` or `-1`.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let sign = permutation_sign(&p);
            (p, sign)
        })
        .collect()
}

/// An `(ℓ, r)`-unshuffle of `{0, …, ℓ+r−1}`: a permutation increasing on its
/// first `ℓ` and last `r` positions, stored as the two blocks plus its sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unshuffle {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub sign: i64,
}

/// Enumerates all `(ℓ, r)`-unshuffles of `{0, …, ℓ+r−1}` in lexicographic
/// order of the first block. There are `binomial(ℓ+r, ℓ)` of them.
pub fn unshuffles(l: usize, r: usize) -> Vec<Unshuffle> {
    let n = l + r;
    (0..n)
        .combinations(l)
        .map(|first| {
            let second: Vec<usize> = (0..n).filter(|i| !first.contains(i)).collect();
            let concat: Vec<usize> = first.iter().chain(second.iter()).copied().collect();
            let sign = permutation_sign(&concat);
            Unshuffle {
                first,
                second,
                sign,
            }
        })
        .collect()
}
