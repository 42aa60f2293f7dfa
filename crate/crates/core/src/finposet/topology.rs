//! Closures, neighbourhoods and Cantor-Bendixson derivatives in the three
//! topologies of a finite spectral space.
//!
//! Every topology here is Alexandrov: each point `p` has a smallest open
//! neighbourhood, and `{w}` is isolated in `s` exactly when that
//! neighbourhood meets `s` only in `w`.

use std::collections::BTreeMap;

use super::{FinPoset, SubsetMask, Topology};

/// Result of iterating the Cantor-Bendixson derivative to stabilization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbProfile {
    /// Rank of every member of the input set; `None` on the perfect core.
    pub ranks: BTreeMap<usize, Option<usize>>,
    /// Stabilized subset, satisfying `δ(perfect) = perfect`.
    pub perfect: SubsetMask,
    /// Derived sets `s, δs, δ²s, …` up to and including the stable one.
    pub derived: Vec<SubsetMask>,
}

impl CbProfile {
    /// `C_{≤α}`: members with rank at most `alpha`.
    pub fn rank_at_most(&self, alpha: usize) -> SubsetMask {
        SubsetMask::from_indices(
            self.ranks
                .iter()
                .filter(|(_, r)| r.is_some_and(|r| r <= alpha))
                .map(|(&p, _)| p),
        )
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.ranks.values().flatten().copied().max()
    }
}

impl FinPoset {
    /// Closure of `{p}`.
    pub fn point_closure(&self, p: usize, t: Topology) -> SubsetMask {
        match t {
            Topology::Zariski => self.up_of(p),
            Topology::Inverse => self.down_of(p),
            Topology::Constructible => SubsetMask::singleton(p),
        }
    }

    /// Smallest open set containing `p`.
    pub fn min_open_nbhd(&self, p: usize, t: Topology) -> SubsetMask {
        match t {
            Topology::Zariski => self.down_of(p),
            Topology::Inverse => self.up_of(p),
            Topology::Constructible => SubsetMask::singleton(p),
        }
    }

    pub fn closure(&self, s: SubsetMask, t: Topology) -> SubsetMask {
        match t {
            Topology::Zariski => self.up_closure(s),
            Topology::Inverse => self.down_closure(s),
            Topology::Constructible => s,
        }
    }

    /// Smallest open superset.
    pub fn open_hull(&self, s: SubsetMask, t: Topology) -> SubsetMask {
        match t {
            Topology::Zariski => self.down_closure(s),
            Topology::Inverse => self.up_closure(s),
            Topology::Constructible => s,
        }
    }

    pub fn is_open(&self, s: SubsetMask, t: Topology) -> bool {
        self.open_hull(s, t) == s
    }

    pub fn is_closed(&self, s: SubsetMask, t: Topology) -> bool {
        self.closure(s, t) == s
    }

    /// Locally closed = open in its own closure.
    pub fn is_locally_closed(&self, s: SubsetMask, t: Topology) -> bool {
        self.open_hull(s, t) & self.closure(s, t) == s
    }

    /// `s` is open in the subspace `ambient` (with `s ⊆ ambient`).
    pub fn is_relatively_open(&self, s: SubsetMask, ambient: SubsetMask, t: Topology) -> bool {
        s.is_subset(ambient) && self.open_hull(s, t) & ambient == s
    }

    /// Points `w ∈ c` admitting an open `U` with `w ∈ U ∩ c ⊆ cl{w}`.
    /// The smallest neighbourhood is the best candidate for `U`.
    pub fn weakly_isolated_points(&self, c: SubsetMask, t: Topology) -> SubsetMask {
        SubsetMask::from_indices(c.iter().filter(|&w| {
            (self.min_open_nbhd(w, t) & c).is_subset(self.point_closure(w, t))
        }))
    }

    /// Points `w ∈ s` with `{w}` relatively open in `s`.
    pub fn isolated_points(&self, s: SubsetMask, t: Topology) -> SubsetMask {
        SubsetMask::from_indices(
            s.iter()
                .filter(|&w| self.min_open_nbhd(w, t) & s == SubsetMask::singleton(w)),
        )
    }

    /// `δs`: `s` minus its isolated points.
    pub fn cb_derivative(&self, s: SubsetMask, t: Topology) -> SubsetMask {
        s - self.isolated_points(s, t)
    }

    pub fn cb_rank_and_perfect(&self, s: SubsetMask, t: Topology) -> CbProfile {
        let mut ranks: BTreeMap<usize, Option<usize>> = s.iter().map(|p| (p, None)).collect();
        let mut derived = vec![s];
        let mut cur = s;
        let mut alpha = 0;
        loop {
            let next = self.cb_derivative(cur, t);
            if next == cur {
                break;
            }
            for p in (cur - next).iter() {
                ranks.insert(p, Some(alpha));
            }
            derived.push(next);
            cur = next;
            alpha += 1;
        }
        CbProfile {
            ranks,
            perfect: cur,
            derived,
        }
    }

    /// Every ascending chain of relatively open subsets of `s` (Zariski)
    /// stabilizes. The relatively open sets are the down-sets of the induced
    /// order; a strictly ascending chain can be refined to one that adds a
    /// single minimal point per step, so its length is bounded by `|s|`.
    /// The check builds such a maximal chain and confirms it ends at `s`.
    pub fn is_noetherian_subspace(&self, s: SubsetMask) -> bool {
        let mut chain = SubsetMask::EMPTY;
        let mut steps = 0;
        while chain != s {
            // a point of s ∖ chain all of whose predecessors in s are in chain
            let next = (s - chain)
                .iter()
                .find(|&p| (self.down_of(p) & (s - SubsetMask::singleton(p))).is_subset(chain));
            let Some(p) = next else {
                return false;
            };
            debug_assert!(self.is_relatively_open(chain | SubsetMask::singleton(p), s, Topology::Zariski));
            chain.insert(p);
            steps += 1;
            if steps > s.len() {
                return false;
            }
        }
        true
    }

    /// Enumerates the closed subsets of the closed set `ambient`.
    /// Stops (returning `None`) once more than `budget` sets were produced.
    pub fn closed_subsets(
        &self,
        ambient: SubsetMask,
        t: Topology,
        budget: usize,
    ) -> Option<Vec<SubsetMask>> {
        // closed subsets of a closed set are the complements of the
        // relatively open ones; enumerate antichain-generated closures
        let pts: Vec<usize> = ambient.iter().collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, SubsetMask::EMPTY, SubsetMask::EMPTY)];
        // (next index, chosen closed set, excluded points)
        while let Some((i, chosen, excluded)) = stack.pop() {
            if i == pts.len() {
                out.push(chosen);
                if out.len() > budget {
                    return None;
                }
                continue;
            }
            let p = pts[i];
            if chosen.contains(p) {
                stack.push((i + 1, chosen, excluded));
                continue;
            }
            // exclude p
            stack.push((i + 1, chosen, excluded | SubsetMask::singleton(p)));
            // include p, provided its closure avoids excluded points
            let cl = self.closure(chosen | SubsetMask::singleton(p), t);
            if cl.is_disjoint(excluded) {
                stack.push((i + 1, cl, excluded));
            }
        }
        Some(out)
    }

    /// Up-sets (Thomason subsets) of the whole poset.
    pub fn up_sets(&self) -> Vec<SubsetMask> {
        self.closed_subsets(self.full(), Topology::Zariski, usize::MAX)
            .expect("unbounded budget")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finposet::FinPoset;

    fn chain2() -> FinPoset {
        FinPoset::chain(&["a", "b"])
    }

    #[test]
    fn closure_examples() {
        let x = chain2();
        let a = SubsetMask::singleton(0);
        let b = SubsetMask::singleton(1);
        assert_eq!(x.closure(a, Topology::Zariski), x.full());
        assert_eq!(x.closure(b, Topology::Inverse), x.full());
        assert_eq!(x.closure(a, Topology::Constructible), a);
    }

    #[test]
    fn weakly_isolated_examples() {
        let x = chain2();
        assert_eq!(
            x.weakly_isolated_points(x.full(), Topology::Inverse),
            SubsetMask::singleton(1)
        );
        let y = FinPoset::antichain(&["p", "q"]);
        for t in Topology::ALL {
            assert_eq!(y.weakly_isolated_points(y.full(), t), y.full());
        }
        assert_eq!(
            x.weakly_isolated_points(SubsetMask::EMPTY, Topology::Zariski),
            SubsetMask::EMPTY
        );
    }

    #[test]
    fn derivative_examples() {
        let y = FinPoset::antichain(&["p", "q"]);
        assert_eq!(y.cb_derivative(y.full(), Topology::Zariski), SubsetMask::EMPTY);
        let x = chain2();
        assert_eq!(
            x.cb_derivative(x.full(), Topology::Inverse),
            SubsetMask::singleton(0)
        );
        assert_eq!(
            x.cb_derivative(SubsetMask::EMPTY, Topology::Inverse),
            SubsetMask::EMPTY
        );
    }

    #[test]
    fn cb_rank_of_three_chain_inverse() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let prof = x.cb_rank_and_perfect(x.full(), Topology::Inverse);
        assert_eq!(prof.ranks[&2], Some(0));
        assert_eq!(prof.ranks[&1], Some(1));
        assert_eq!(prof.ranks[&0], Some(2));
        assert!(prof.perfect.is_empty());
        let empty = x.cb_rank_and_perfect(SubsetMask::EMPTY, Topology::Inverse);
        assert!(empty.ranks.is_empty());
        assert!(empty.perfect.is_empty());
    }

    #[test]
    fn noetherian_checks() {
        let x = FinPoset::chain(&["1", "2", "3", "4", "5"]);
        assert!(x.is_noetherian_subspace(x.full()));
        assert!(x.is_noetherian_subspace(SubsetMask::EMPTY));
        assert!(x.is_noetherian_subspace(SubsetMask::from_indices([0, 3])));
    }

    #[test]
    fn closed_subsets_of_chain_and_antichain() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let mut ups = x.up_sets();
        ups.sort();
        assert_eq!(ups.len(), 4);
        let y = FinPoset::antichain(&["p", "q", "r"]);
        assert_eq!(y.up_sets().len(), 8);
        assert!(y.closed_subsets(y.full(), Topology::Inverse, 5).is_none());
    }
}
