//! Finite spectral spaces encoded by their specialization order.
//!
//! Order convention: `p ≤ q` (the pair `[p, q]` in the input) means that
//! `q` lies in the Zariski closure of `{p}`. With this convention
//!
//! * Zariski closed sets are the up-sets, Zariski opens the down-sets;
//! * Thomason subsets (the inverse-topology opens) are the up-sets;
//! * the constructible topology on a finite space is discrete.
//!
//! Subsets are [`SubsetMask`] bitmasks over the indexed point list, so a
//! poset holds at most 64 points.

mod subset;
mod topology;
mod visible;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use subset::SubsetMask;
pub use topology::CbProfile;
pub use visible::WeaklyVisibleWitness;

pub const MAX_POINTS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("point identifiers must be nonempty")]
    EmptyIdentifier,
    #[error("duplicate point identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("too many points: {0} (at most {MAX_POINTS})")]
    TooManyPoints(usize),
    #[error("relation is not antisymmetric: cycle through {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("malformed poset file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Zariski,
    Inverse,
    Constructible,
}

impl Topology {
    pub const ALL: [Topology; 3] = [Topology::Zariski, Topology::Inverse, Topology::Constructible];
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Zariski => "zariski",
            Topology::Inverse => "inverse",
            Topology::Constructible => "constructible",
        })
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "zar" | "zariski" => Ok(Topology::Zariski),
            "inv" | "inverse" | "hochster" => Ok(Topology::Inverse),
            "cons" | "constructible" | "patch" => Ok(Topology::Constructible),
            other => Err(format!("unknown topology `{other}`")),
        }
    }
}

/// On-disk form: `{"points": ["a","b"], "leq": [["a","b"]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

/// A finite poset / finite spectral space. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    points: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[i]`: all `j` with `i ≤ j` (Zariski closure of `{i}`).
    up: Vec<u64>,
    /// `down[i]`: all `j` with `j ≤ i`.
    down: Vec<u64>,
}

impl FinPoset {
    /// Builds a poset from generating pairs; the reflexive-transitive
    /// closure is taken and antisymmetry is checked.
    pub fn new<S: AsRef<str>>(points: &[S], leq: &[(S, S)]) -> Result<Self, PosetError> {
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
        if points.len() > MAX_POINTS {
            return Err(PosetError::TooManyPoints(points.len()));
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.is_empty() {
                return Err(PosetError::EmptyIdentifier);
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(PosetError::DuplicateIdentifier(p.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownPoint(s.to_owned()))
        };
        let mut edges = Vec::with_capacity(leq.len());
        for (p, q) in leq {
            edges.push((lookup(p.as_ref())?, lookup(q.as_ref())?));
        }
        let (up, down) = close_relation(points.len(), &edges).map_err(|cycle| {
            PosetError::Cycle(cycle.into_iter().map(|i| points[i].clone()).collect())
        })?;
        Ok(Self {
            points,
            index,
            up,
            down,
        })
    }

    /// Builds a poset on points `"0".."n-1"` from up-set masks that are
    /// already reflexive and transitive.
    pub(crate) fn from_up_masks(up: Vec<u64>) -> Self {
        let n = up.len();
        let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut down = vec![0u64; n];
        for (i, &u) in up.iter().enumerate() {
            for j in SubsetMask(u).iter() {
                down[j] |= 1 << i;
            }
        }
        let index = points.iter().cloned().zip(0..).collect();
        Self {
            points,
            index,
            up,
            down,
        }
    }

    /// Poset on points `"0".."n-1"` generated by index pairs.
    pub fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let pts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = pairs
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::new(&pts, &pairs)
    }

    pub fn chain<S: AsRef<str>>(points: &[S]) -> Self {
        let pairs: Vec<(&str, &str)> = points
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let pts: Vec<&str> = points.iter().map(|p| p.as_ref()).collect();
        Self::new(&pts, &pairs).expect("a chain is a poset")
    }

    pub fn antichain<S: AsRef<str>>(points: &[S]) -> Self {
        let pts: Vec<&str> = points.iter().map(|p| p.as_ref()).collect();
        Self::new(&pts, &[]).expect("an antichain is a poset")
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, PosetError> {
        let pairs: Vec<(String, String)> = file
            .leq
            .iter()
            .map(|[p, q]| (p.clone(), q.clone()))
            .collect();
        Self::new(&file.points, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let file: PosetFile =
            serde_json::from_str(text).map_err(|e| PosetError::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    /// The covering pairs of the order, in point order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let strict_up = self.up[i] & !(1u64 << i);
            for j in SubsetMask(strict_up).iter() {
                let between = strict_up & self.down[j] & !(1u64 << j);
                if between == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            points: self.points.clone(),
            leq: self
                .hasse_edges()
                .into_iter()
                .map(|(i, j)| [self.points[i].clone(), self.points[j].clone()])
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    /// Same points, opposite order.
    pub fn reversed(&self) -> Self {
        Self {
            points: self.points.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p] >> q & 1 == 1
    }

    /// `↑p`.
    pub fn up_of(&self, p: usize) -> SubsetMask {
        SubsetMask(self.up[p])
    }

    /// `↓p`.
    pub fn down_of(&self, p: usize) -> SubsetMask {
        SubsetMask(self.down[p])
    }

    pub fn up_closure(&self, s: SubsetMask) -> SubsetMask {
        s.iter().fold(SubsetMask::EMPTY, |acc, p| acc | self.up_of(p))
    }

    pub fn down_closure(&self, s: SubsetMask) -> SubsetMask {
        s.iter().fold(SubsetMask::EMPTY, |acc, p| acc | self.down_of(p))
    }

    pub fn is_up_set(&self, s: SubsetMask) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_down_set(&self, s: SubsetMask) -> bool {
        self.down_closure(s) == s
    }

    /// Whether `s` only mentions points of this poset.
    pub fn contains_subset(&self, s: SubsetMask) -> bool {
        s.is_subset(self.full())
    }

    pub fn subset_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<SubsetMask, PosetError> {
        let mut s = SubsetMask::EMPTY;
        for n in names {
            let n = n.as_ref();
            s.insert(
                self.index_of(n)
                    .ok_or_else(|| PosetError::UnknownPoint(n.to_owned()))?,
            );
        }
        Ok(s)
    }

    /// Parses `{a,b}`, `a,b` or `{}`.
    pub fn parse_subset(&self, text: &str) -> Result<SubsetMask, PosetError> {
        let t = text.trim();
        let t = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        let names: Vec<&str> = t
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.subset_from_names(&names)
    }

    /// `{a,b}` in point order.
    pub fn format_subset(&self, s: SubsetMask) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Points of `s` sorted by identifier.
    pub fn lexicographic(&self, s: SubsetMask) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().collect();
        v.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]));
        v
    }
}

/// Reflexive-transitive closure; on a cycle, returns the points of one
/// cycle in order.
fn close_relation(n: usize, edges: &[(usize, usize)]) -> Result<(Vec<u64>, Vec<u64>), Vec<usize>> {
    let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for &(p, q) in edges {
        up[p] |= 1 << q;
    }
    for k in 0..n {
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= up[k];
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                return Err(find_cycle(n, edges, i, j));
            }
        }
    }
    let mut down = vec![0u64; n];
    for i in 0..n {
        for j in SubsetMask(up[i]).iter() {
            down[j] |= 1 << i;
        }
    }
    Ok((up, down))
}

fn find_cycle(n: usize, edges: &[(usize, usize)], from: usize, to: usize) -> Vec<usize> {
    let path = |a: usize, b: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([a]);
        prev[a] = a;
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &(p, q) in edges {
                if p == x && prev[q] == usize::MAX {
                    prev[q] = x;
                    queue.push_back(q);
                }
            }
        }
        let mut out = vec![b];
        let mut cur = b;
        while cur != a {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        out
    };
    let mut cycle = path(from, to);
    let back = path(to, from);
    cycle.extend_from_slice(&back[1..]);
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_json_and_closes_transitively() {
        let x = FinPoset::from_json(r#"{"points":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#)
            .unwrap();
        assert!(x.leq(0, 2));
        assert!(x.leq(1, 1));
        assert!(!x.leq(2, 0));
        assert_eq!(x.hasse_edges(), vec![(0, 1), (1, 2)]);
        let again = FinPoset::from_json(&x.to_json()).unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn rejects_cycles_with_diagnostic() {
        let err = FinPoset::from_json(
            r#"{"points":["a","b","c"],"leq":[["a","b"],["b","c"],["c","a"]]}"#,
        )
        .unwrap_err();
        match err {
            PosetError::Cycle(c) => {
                assert_eq!(c.first(), c.last());
                assert!(c.len() >= 3);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_identifiers() {
        assert_eq!(
            FinPoset::new(&["a", "a"], &[]).unwrap_err(),
            PosetError::DuplicateIdentifier("a".into())
        );
        assert_eq!(
            FinPoset::new(&["a", ""], &[]).unwrap_err(),
            PosetError::EmptyIdentifier
        );
        assert_eq!(
            FinPoset::new(&["a"], &[("a", "z")]).unwrap_err(),
            PosetError::UnknownPoint("z".into())
        );
        let many: Vec<String> = (0..65).map(|i| i.to_string()).collect();
        assert_eq!(
            FinPoset::new::<String>(&many, &[]).unwrap_err(),
            PosetError::TooManyPoints(65)
        );
    }

    #[test]
    fn subset_parsing() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let s = x.parse_subset("{a, c}").unwrap();
        assert_eq!(x.format_subset(s), "{a,c}");
        assert_eq!(x.parse_subset("{}").unwrap(), SubsetMask::EMPTY);
        assert!(x.parse_subset("q").is_err());
    }
}
