//! Tensor train versus hierarchical Tucker on the same leaf order.
//!
//! A train track tree has exactly the prefix splits `{1..j}`, so a hierarchical
//! Tucker model `HT(n, r)` on the almost perfect binary tree fits inside the
//! tensor train model `TT(n, R)` iff every prefix flattening of a generic HT
//! tensor has rank at most `R`. With a constant bond `r` that rank is
//! `r^minmono(ABT(n), {1..j})`, so everything reduces to the exponent
//! `k = max_j minmono(ABT(n), {1..j})`. It jumps exactly after the landmarks
//! `a_k = 1 + 4 + ... + 4^k`.

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cuts::mono_dp;
use crate::error::{Error, Result};
use crate::tree::{check_permutation, Tree};

/// `a_0 = 0`, `a_k = sum_{i=0..=k} 4^i`; `None` on `u64` overflow.
pub fn landmark(k: u32) -> Option<u64> {
    if k == 0 {
        return Some(0);
    }
    (0..=k).try_fold(0u64, |acc, i| acc.checked_add(4u64.checked_pow(i)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TtExponent {
    pub k: usize,
    /// Smallest `j` with `minmono(tree, {1..j}) = k`.
    pub witness_j: usize,
}

/// Largest minimal monochromatic cut over the prefixes `{1..j}`, `1 <= j < n`.
pub fn tt_exponent(tree: &Tree) -> TtExponent {
    let order: Vec<usize> = (1..=tree.n()).collect();
    exponent_for_order(tree, &order)
}

/// Prefix exponent when leaf `l` sits at position `position[l - 1]` (1-based).
fn exponent_for_order(tree: &Tree, position: &[usize]) -> TtExponent {
    let n = tree.n();
    let mut best = TtExponent { k: 0, witness_j: 0 };
    let mut colour = vec![false; n + 1];
    for j in 1..n {
        for l in 1..=n {
            colour[l] = position[l - 1] <= j;
        }
        let (k, _) = mono_dp(tree, &colour, |_| 1usize, |a, b| a + b, 0);
        if k > best.k {
            best = TtExponent { k, witness_j: j };
        }
    }
    best
}

/// How [`min_exponent_over_permutations`] explores leaf orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum PermutationMode {
    /// Every permutation, in lexicographic order; `n <= 8`.
    Exhaustive,
    /// Uniform random permutations from a seeded ChaCha8 stream.
    Sampled { trials: usize, seed: u64 },
}

/// Largest `n` accepted in exhaustive mode.
pub const EXHAUSTIVE_MAX_LEAVES: usize = 8;

/// Default number of sampled permutations.
pub const DEFAULT_SAMPLED_TRIALS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationScan {
    pub k_min: usize,
    /// Attaining permutation: leaf `i` is relabelled `permutation[i - 1]`.
    pub permutation: Vec<usize>,
    pub examined: usize,
}

/// Minimum of `tt_exponent(tree.relabel(π))` over permutations `π`.
///
/// The first attaining permutation (in the order examined) is reported. Since
/// no order can go below 1 the scan stops early once it reaches 1.
pub fn min_exponent_over_permutations(
    tree: &Tree,
    mode: PermutationMode,
) -> Result<PermutationScan> {
    let n = tree.n();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut examined = 0;
    let mut consider = |perm: Vec<usize>| -> bool {
        examined += 1;
        // relabelling leaf l to perm[l-1] puts it at position perm[l-1] of the new order
        let k = exponent_for_order(tree, &perm).k;
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, perm));
        }
        best.as_ref().is_some_and(|(b, _)| *b <= 1)
    };
    match mode {
        PermutationMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_LEAVES {
                return Err(Error::InvalidArgument(format!(
                    "exhaustive permutation scan supports n <= {EXHAUSTIVE_MAX_LEAVES}, got {n}"
                )));
            }
            for perm in (1..=n).permutations(n) {
                if consider(perm) {
                    break;
                }
            }
        }
        PermutationMode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(Error::InvalidArgument("trials must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (1..=n).collect();
            for _ in 0..trials {
                perm.shuffle(&mut rng);
                if consider(perm.clone()) {
                    break;
                }
            }
        }
    }
    let (k_min, permutation) = best.expect("at least one permutation examined");
    debug_assert!(check_permutation(&permutation, n).is_ok());
    Ok(PermutationScan {
        k_min,
        permutation,
        examined,
    })
}

/// Inclusion and exclusion bonds between `HT(n, r)` and `TT(n, ·)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: usize,
    pub r: u64,
    pub k: usize,
    pub witness_j: usize,
    /// `a_{k-1}`, exclusive lower end of the landmark interval.
    pub landmark_lo: u64,
    /// `a_k`, inclusive upper end.
    pub landmark_hi: u64,
    #[serde(serialize_with = "crate::json::big")]
    pub inclusion_bond: BigUint,
    #[serde(serialize_with = "crate::json::big")]
    pub exclusion_bond: BigUint,
    pub inclusion: String,
    pub exclusion: String,
}

/// `HT(n, r) ⊆ TT(n, r^k)` and `HT(n, r) ⊄ TT(n, r^k - 1)` for the prefix exponent
/// `k` of the almost perfect binary tree, checked against the landmark interval
/// `a_{k-1} < n <= a_k`.
pub fn hackbusch_verdict(n: usize, r: u64) -> Result<Verdict> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "r must be at least 2, got {r}"
        )));
    }
    let tree = Tree::almost_perfect_binary(n)?;
    let TtExponent { k, witness_j } = tt_exponent(&tree);
    let kk = u32::try_from(k).expect("exponent is at most n");
    let lo = landmark(kk - 1).expect("k - 1 is small");
    let hi = landmark(kk).unwrap_or(u64::MAX);
    if !(lo < n as u64 && n as u64 <= hi) {
        return Err(Error::LandmarkMismatch { n, k, lo, hi });
    }
    let bond = BigUint::from(r).pow(kk);
    let below = &bond - 1u32;
    Ok(Verdict {
        n,
        r,
        k,
        witness_j,
        landmark_lo: lo,
        landmark_hi: hi,
        inclusion: format!("HT({n},{r}) ⊆ TT({n},{bond})"),
        exclusion: format!("HT({n},{r}) ⊄ TT({n},{below})"),
        inclusion_bond: bond,
        exclusion_bond: below,
    })
}
