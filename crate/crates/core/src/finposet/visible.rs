use serde::Serialize;

use super::{FinPoset, SubsetMask};

/// Two Thomason subsets with `y1 ∩ y2ᶜ` equal to the witnessed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeaklyVisibleWitness {
    pub y1: SubsetMask,
    pub y2: SubsetMask,
}

impl WeaklyVisibleWitness {
    pub fn witnessed(&self) -> SubsetMask {
        self.y1 - self.y2
    }
}

impl FinPoset {
    /// Thomason subsets of a finite spectral space are the up-sets.
    pub fn is_thomason(&self, s: SubsetMask) -> bool {
        self.is_up_set(s)
    }

    /// Order-convex: `p ≤ q ≤ r` with `p, r ∈ s` forces `q ∈ s`.
    pub fn is_convex(&self, s: SubsetMask) -> bool {
        (self.up_closure(s) & self.down_closure(s)) == s
    }

    /// Candidate witness `y1 = ↑s`, `y2 = ↑s ∖ s`. It is a witness exactly
    /// when `y2` is again an up-set, which happens iff `s` is convex; no
    /// witness exists for non-convex `s`.
    pub fn weakly_visible_witness(&self, s: SubsetMask) -> Option<WeaklyVisibleWitness> {
        let y1 = self.up_closure(s);
        let y2 = y1 - s;
        self.is_up_set(y2).then_some(WeaklyVisibleWitness { y1, y2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomason_examples() {
        let x = FinPoset::chain(&["a", "b"]);
        assert!(x.is_thomason(SubsetMask::singleton(1)));
        assert!(!x.is_thomason(SubsetMask::singleton(0)));
        assert!(x.is_thomason(SubsetMask::EMPTY));
    }

    #[test]
    fn witness_examples() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let w = x.weakly_visible_witness(SubsetMask::singleton(1)).unwrap();
        assert_eq!(w.y1, SubsetMask::from_indices([1, 2]));
        assert_eq!(w.y2, SubsetMask::singleton(2));
        assert_eq!(w.witnessed(), SubsetMask::singleton(1));
        assert!(x
            .weakly_visible_witness(SubsetMask::from_indices([0, 2]))
            .is_none());
        for p in 0..3 {
            let w = x.weakly_visible_witness(SubsetMask::singleton(p)).unwrap();
            assert_eq!(w.witnessed(), SubsetMask::singleton(p));
        }
    }
}
