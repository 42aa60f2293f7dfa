use serde::{Deserialize, Serialize};

/// A finite union of half-open intervals `[a, b)` of a linear order, kept
/// sorted, disjoint, nonempty and maximal (touching intervals merged).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalSet<T> {
    intervals: Vec<(T, T)>,
}

impl<T> Default for IntervalSet<T> {
    fn default() -> Self {
        Self {
            intervals: Vec::new(),
        }
    }
}

impl<T: Ord + Clone> IntervalSet<T> {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `[a, b)`, empty when `b ≤ a`.
    pub fn interval(a: T, b: T) -> Self {
        Self::from_intervals(vec![(a, b)])
    }

    /// Normalizes an arbitrary list of intervals.
    pub fn from_intervals(mut v: Vec<(T, T)>) -> Self {
        v.retain(|(a, b)| a < b);
        v.sort();
        let mut out: Vec<(T, T)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[(T, T)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains_point(&self, x: &T) -> bool {
        self.intervals.iter().any(|(a, b)| a <= x && x < b)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.intervals.clone();
        v.extend(other.intervals.iter().cloned());
        Self::from_intervals(v)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = &self.intervals[i];
            let (a2, b2) = &other.intervals[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { intervals: out }
    }

    /// Complement inside `[lo, hi)`; assumes `self ⊆ [lo, hi)`.
    pub fn complement(&self, lo: &T, hi: &T) -> Self {
        let mut out = Vec::new();
        let mut cur = lo.clone();
        for (a, b) in &self.intervals {
            if cur < *a {
                out.push((cur, a.clone()));
            }
            cur = b.clone();
        }
        if cur < *hi {
            out.push((cur, hi.clone()));
        }
        Self { intervals: out }
    }

    pub fn difference(&self, other: &Self, lo: &T, hi: &T) -> Self {
        self.intersection(&other.complement(lo, hi))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(other) == *self
    }

    /// Whether every endpoint lies in `[lo, hi]`.
    pub fn within(&self, lo: &T, hi: &T) -> bool {
        self.intervals.iter().all(|(a, b)| lo <= a && b <= hi)
    }

    /// Whether some interval `[a, b)` has `a < x ≤ b`, i.e. the set
    /// contains a left neighbourhood of `x`.
    pub fn has_left_nbhd(&self, x: &T) -> bool {
        self.intervals.iter().any(|(a, b)| a < x && x <= b)
    }

    pub fn is_normalized(&self) -> bool {
        self.intervals.iter().all(|(a, b)| a < b)
            && self.intervals.windows(2).all(|w| w[0].1 < w[1].0)
    }
}
