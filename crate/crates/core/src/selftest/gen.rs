//! Generators for posets, covers and objects.

use rand::Rng;

use crate::dcat::DObj;
use crate::finposet::{FinPoset, SubsetMask, Topology};
use crate::refinement::{CoverPiece, LocallyClosedCover};

/// Random poset on `n` points: a random relation `i < j` (for `i < j` in
/// index order) with edge probability `p`, transitively closed. Points are
/// named `x0, x1, …`.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> FinPoset {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    FinPoset::new(&names, &pairs).expect("upper-triangular relations are acyclic")
}

pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, universe: SubsetMask) -> SubsetMask {
    SubsetMask(rng.gen::<u64>() & universe.0)
}

/// Random locally closed cover of `c`: a few locally closed hulls of random
/// sets, then singleton pieces for whatever is left uncovered.
pub fn random_cover<R: Rng + ?Sized>(
    rng: &mut R,
    x: &FinPoset,
    t: Topology,
    c: SubsetMask,
) -> LocallyClosedCover {
    let mut pieces = Vec::new();
    for _ in 0..rng.gen_range(0..4) {
        let s = random_subset(rng, x.full());
        if s.is_empty() {
            continue;
        }
        pieces.push(CoverPiece {
            v: x.open_hull(s, t),
            z: x.closure(s, t),
        });
    }
    let mut cover = LocallyClosedCover::new(pieces);
    while let Some(p) = (c - cover.union()).first() {
        // sometimes a larger piece around p, sometimes the singleton
        let extra = if rng.gen_bool(0.5) {
            random_subset(rng, x.full()) | SubsetMask::singleton(p)
        } else {
            SubsetMask::singleton(p)
        };
        cover.pieces.push(CoverPiece {
            v: x.open_hull(extra, t),
            z: x.closure(extra, t),
        });
    }
    cover
}

/// Every naturally labelled poset on `n` points (`i ≤ j` only if `i ≤ j` as
/// integers). Every isomorphism type occurs at least once.
pub fn all_posets(n: usize) -> Vec<FinPoset> {
    let mut out = Vec::new();
    let mut down = Vec::with_capacity(n);
    extend_posets(n, &mut down, &mut out);
    out
}

fn extend_posets(n: usize, down: &mut Vec<u64>, out: &mut Vec<FinPoset>) {
    let j = down.len();
    if j == n {
        let mut up = vec![0u64; n];
        for (i, &d) in down.iter().enumerate() {
            for k in SubsetMask(d).iter() {
                up[k] |= 1 << i;
            }
        }
        out.push(FinPoset::from_up_masks(up));
        return;
    }
    // predecessors of j: any down-closed subset of {0..j-1}
    for pred in SubsetMask::full(j).subsets() {
        if pred.iter().all(|i| SubsetMask(down[i]).is_subset(pred)) {
            down.push(pred.0 | 1 << j);
            extend_posets(n, down, out);
            down.pop();
        }
    }
}

/// Random object over `k^n` with dimensions `≤ max_dim` in degrees
/// `-2..=2`.
pub fn random_object<R: Rng + ?Sized>(rng: &mut R, n: usize, max_dim: u64) -> DObj {
    let mut entries = Vec::new();
    for i in 0..n {
        if rng.gen_bool(0.3) {
            continue;
        }
        for d in -2..=2 {
            if rng.gen_bool(0.4) {
                entries.push(((i, d), rng.gen_range(0..=max_dim)));
            }
        }
    }
    DObj::new(n, entries).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naturally_labelled_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 7, 40, 357]);
    }
}
