use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// A finite or cofinite subset of ℕ. When `cofinite` is set the element is
/// `ℕ ∖ exceptions`, otherwise it is `exceptions` itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fincof {
    pub cofinite: bool,
    pub exceptions: BTreeSet<u64>,
}

impl Fincof {
    pub fn finite(it: impl IntoIterator<Item = u64>) -> Self {
        Self {
            cofinite: false,
            exceptions: it.into_iter().collect(),
        }
    }

    pub fn cofinite(it: impl IntoIterator<Item = u64>) -> Self {
        Self {
            cofinite: true,
            exceptions: it.into_iter().collect(),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.exceptions.contains(&n) != self.cofinite
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.exceptions.is_empty()
    }

    pub fn complement(&self) -> Self {
        Self {
            cofinite: !self.cofinite,
            exceptions: self.exceptions.clone(),
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => Self::finite(self.exceptions.intersection(&other.exceptions).copied()),
            (true, true) => Self::cofinite(self.exceptions.union(&other.exceptions).copied()),
            (false, true) => Self::finite(self.exceptions.difference(&other.exceptions).copied()),
            (true, false) => Self::finite(other.exceptions.difference(&self.exceptions).copied()),
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        self.complement().meet(&other.complement()).complement()
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<u64> {
        if self.cofinite {
            (0..).find(|n| !self.exceptions.contains(n))
        } else {
            self.exceptions.first().copied()
        }
    }
}
