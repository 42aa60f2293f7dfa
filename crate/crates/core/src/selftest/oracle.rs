//! Brute-force oracles, written without the closed forms they check.

use crate::finposet::{FinPoset, SubsetMask};

/// Searches all pairs of up-sets for `y1 ∖ y2 = s`.
pub fn weakly_visible_by_search(
    x: &FinPoset,
    ups: &[SubsetMask],
    s: SubsetMask,
) -> Option<(SubsetMask, SubsetMask)> {
    debug_assert!(ups.iter().all(|&u| x.is_up_set(u)));
    for &y1 in ups {
        if !s.is_subset(y1) {
            continue;
        }
        for &y2 in ups {
            if y1 - y2 == s {
                return Some((y1, y2));
            }
        }
    }
    None
}

/// Brute-force Cantor-Bendixson stratification: a point is isolated in `s`
/// when some open set (from the explicit list `opens`) meets `s` in exactly
/// that point.
pub fn perfect_core_by_search(opens: &[SubsetMask], s: SubsetMask) -> SubsetMask {
    let mut cur = s;
    loop {
        let isolated = SubsetMask::from_indices(
            cur.iter()
                .filter(|&w| opens.iter().any(|&u| u & cur == SubsetMask::singleton(w))),
        );
        if isolated.is_empty() {
            return cur;
        }
        cur = cur - isolated;
    }
}

/// An interval algebra `[0, ω·k + n)` stored extensionally: `k` copies of
/// ℕ (each kept as finitely many explicit points plus one bit for all the
/// points beyond) followed by `n` isolated points.
///
/// The Loewy series is computed from the definition: the socle is the ideal
/// of finite joins of atoms (single points), and `A / s_1` is the algebra
/// remembering only which copies of ℕ an element contains cofinitely.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtAlg {
    pub blocks: usize,
    pub points: usize,
}

/// Element of an [`ExtAlg`]. Block `j` holds `prefix[j]` (points `< PREFIX`)
/// and `tail[j]` (the points `≥ PREFIX`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElem {
    pub prefix: Vec<u32>,
    pub tail: Vec<bool>,
    pub finite: u64,
}

/// Explicit points per copy of ℕ.
pub const PREFIX: u32 = 8;

/// A point of the Stone space of an [`ExtAlg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtPrime {
    /// Elements omitting point `i` of block `j`.
    BlockPoint(usize, u32),
    /// Elements omitting the isolated point `i`.
    Point(usize),
    /// Elements meeting block `j` in a finite set.
    Tail(usize),
}

impl ExtAlg {
    pub fn zero(&self) -> ExtElem {
        ExtElem {
            prefix: vec![0; self.blocks],
            tail: vec![false; self.blocks],
            finite: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks == 0 && self.points == 0
    }

    /// Number of points of `e`; `None` when infinite.
    pub fn cardinality(&self, e: &ExtElem) -> Option<u32> {
        if e.tail.iter().any(|&b| b) {
            return None;
        }
        Some(e.prefix.iter().map(|p| p.count_ones()).sum::<u32>() + e.finite.count_ones())
    }

    /// Atoms are the one-point elements; the socle consists of the finite
    /// joins of atoms, i.e. the elements with finitely many points.
    pub fn in_socle(&self, e: &ExtElem) -> bool {
        self.cardinality(e).is_some()
    }

    /// `A / s_1`: each copy of ℕ collapses to one point, isolated points die.
    pub fn socle_quotient(&self) -> ExtAlg {
        ExtAlg {
            blocks: 0,
            points: self.blocks,
        }
    }

    pub fn socle_quotient_map(&self, e: &ExtElem) -> ExtElem {
        ExtElem {
            prefix: Vec::new(),
            tail: Vec::new(),
            finite: e
                .tail
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0, |acc, (j, _)| acc | 1 << j),
        }
    }

    /// `e ∈ s_α`, using `s_0 = 0` and `s_{α} / s_1 = s_{α-1}(A / s_1)`.
    pub fn in_loewy(&self, e: &ExtElem, alpha: u32) -> bool {
        if alpha == 0 {
            return self.cardinality(e) == Some(0);
        }
        if self.in_socle(e) {
            return true;
        }
        self.socle_quotient()
            .in_loewy(&self.socle_quotient_map(e), alpha - 1)
    }

    /// `A / s_α` together with the image of `e`.
    pub fn quotient(&self, e: &ExtElem, alpha: u32) -> (ExtAlg, ExtElem) {
        let (mut a, mut x) = (*self, e.clone());
        for _ in 0..alpha {
            x = a.socle_quotient_map(&x);
            a = a.socle_quotient();
        }
        (a, x)
    }

    pub fn member(&self, e: &ExtElem, p: ExtPrime) -> bool {
        match p {
            ExtPrime::BlockPoint(j, i) => e.prefix[j] >> i & 1 == 0,
            ExtPrime::Point(i) => e.finite >> i & 1 == 0,
            ExtPrime::Tail(j) => !e.tail[j],
        }
    }

    /// Rank from the definition: point primes are isolated; a tail prime
    /// contains the socle and becomes a point prime of `A / s_1`.
    pub fn rank(&self, p: ExtPrime) -> u32 {
        match p {
            ExtPrime::BlockPoint(..) | ExtPrime::Point(_) => 0,
            ExtPrime::Tail(j) => 1 + self.socle_quotient().rank(ExtPrime::Point(j)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finposet::Topology;

    #[test]
    fn weakly_visible_search_on_chain() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let ups = x.up_sets();
        assert!(weakly_visible_by_search(&x, &ups, SubsetMask::singleton(1)).is_some());
        assert!(weakly_visible_by_search(&x, &ups, SubsetMask::from_indices([0, 2])).is_none());
    }

    #[test]
    fn ext_socle() {
        let a = ExtAlg { blocks: 2, points: 1 };
        let mut e = a.zero();
        e.prefix[1] = 0b101;
        assert!(a.in_loewy(&e, 1));
        e.tail[0] = true;
        assert!(!a.in_loewy(&e, 1));
        assert!(a.in_loewy(&e, 2));
        assert_eq!(a.rank(ExtPrime::Tail(1)), 1);
        let x = FinPoset::chain(&["a", "b"]);
        let opens = x.closed_subsets(x.full(), Topology::Zariski, 100).unwrap();
        assert!(perfect_core_by_search(&opens, x.full()).is_empty());
    }
}
