//! A finite model of `D(k^n)`: an object is an `n`-tuple of graded vector
//! spaces, recorded by its homology dimensions. The spectrum is the discrete
//! space `{p0, …, p(n-1)}`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::finposet::{FinPoset, SubsetMask, Topology};
use crate::refinement::{
    refine_cover, verify_filtration, CoverPiece, Filtration, LocallyClosedCover, RefineError,
};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DcatError {
    #[error("objects over k^{0} and k^{1} cannot be combined")]
    BaseMismatch(usize, usize),
    #[error("point {0} of the support lies in no cover member")]
    CoverGap(String),
    #[error("prime index {0} out of range for k^{1}")]
    PrimeOutOfRange(usize, usize),
    #[error("malformed object literal: {0}")]
    Parse(String),
    #[error("refinement failed: {0}")]
    Refine(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DObj {
    n: usize,
    /// `(prime, degree) → dimension`, nonzero entries only.
    dims: BTreeMap<(usize, i64), u64>,
}

impl DObj {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            dims: BTreeMap::new(),
        }
    }

    /// `k^n` in degree 0.
    pub fn unit(n: usize) -> Self {
        Self {
            n,
            dims: (0..n).map(|i| ((i, 0), 1)).collect(),
        }
    }

    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, i64), u64)>,
    ) -> Result<Self, DcatError> {
        let mut t = Self::zero(n);
        for ((i, d), k) in entries {
            if i >= n {
                return Err(DcatError::PrimeOutOfRange(i, n));
            }
            if k > 0 {
                *t.dims.entry((i, d)).or_default() += k;
            }
        }
        Ok(t)
    }

    pub fn base(&self) -> usize {
        self.n
    }

    pub fn dim(&self, i: usize, d: i64) -> u64 {
        self.dims.get(&(i, d)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), u64)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    fn same_base(&self, other: &Self) -> Result<(), DcatError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(DcatError::BaseMismatch(self.n, other.n))
        }
    }

    /// Componentwise over primes, graded convolution over degrees.
    pub fn tensor(&self, other: &Self) -> Result<Self, DcatError> {
        self.same_base(other)?;
        let mut out = Self::zero(self.n);
        for (&(i, a), &x) in &self.dims {
            for (&(j, b), &y) in &other.dims {
                if i == j {
                    *out.dims.entry((i, a + b)).or_default() += x * y;
                }
            }
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, DcatError> {
        self.same_base(other)?;
        let mut out = self.clone();
        for (&k, &v) in &other.dims {
            *out.dims.entry(k).or_default() += v;
        }
        Ok(out)
    }

    fn restrict(&self, keep: SubsetMask) -> Self {
        Self {
            n: self.n,
            dims: self
                .dims
                .iter()
                .filter(|((i, _), _)| keep.contains(*i))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// `Γ_Y t`.
    pub fn gamma(&self, y: SubsetMask) -> Self {
        self.restrict(y)
    }

    /// `L_{Y^c} t`, the localization away from `Y`.
    pub fn loc(&self, y: SubsetMask) -> Self {
        self.restrict(y.complement_in(SubsetMask::full(self.n)))
    }

    /// `g(p) ⊗ t`.
    pub fn g(&self, p: usize) -> Self {
        self.restrict(SubsetMask::singleton(p))
    }

    pub fn supp(&self) -> SubsetMask {
        SubsetMask::from_indices(self.dims.keys().map(|&(i, _)| i))
    }

    /// Parses `{p0: [2@0], p2: [4@5, 1@-1]}` over `k^n`.
    pub fn parse(n: usize, text: &str) -> Result<Self, DcatError> {
        let err = |m: String| DcatError::Parse(m);
        let s = text.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| err(format!("expected `{{…}}`, got `{s}`")))?;
        let mut entries = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let (head, tail) = rest
                .split_once(':')
                .ok_or_else(|| err(format!("expected `pI: [...]` in `{rest}`")))?;
            let i: usize = head
                .trim()
                .strip_prefix('p')
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| err(format!("bad prime `{}`", head.trim())))?;
            let tail = tail.trim_start();
            let list = tail
                .strip_prefix('[')
                .ok_or_else(|| err(format!("expected `[` after `{}`", head.trim())))?;
            let (body, after) = list
                .split_once(']')
                .ok_or_else(|| err("missing `]`".to_owned()))?;
            for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let (k, d) = item
                    .split_once('@')
                    .ok_or_else(|| err(format!("expected `dim@degree`, got `{item}`")))?;
                let k: u64 = k.trim().parse().map_err(|_| err(format!("bad dimension `{k}`")))?;
                let d: i64 = d.trim().parse().map_err(|_| err(format!("bad degree `{d}`")))?;
                entries.push(((i, d), k));
            }
            rest = after.trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Self::new(n, entries)
    }
}

impl fmt::Display for DObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_prime: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (&(i, d), &k) in &self.dims {
            by_prime.entry(i).or_default().push(format!("{k}@{d}"));
        }
        let parts: Vec<String> = by_prime
            .into_iter()
            .map(|(i, v)| format!("p{i}: [{}]", v.join(", ")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The discrete spectrum `{p0, …, p(n-1)}`.
pub fn spectrum(n: usize) -> FinPoset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    FinPoset::antichain(&names)
}

/// Refinement of `cover` around `supp` on the discrete spectrum, in the
/// inverse topology. Each cover member `W` is the piece `W ∩ X`.
pub fn ltg_filtration(
    n: usize,
    supp: SubsetMask,
    cover: &[SubsetMask],
) -> Result<(LocallyClosedCover, Filtration), DcatError> {
    let x = spectrum(n);
    let full = x.full();
    let lc = LocallyClosedCover::new(
        cover
            .iter()
            .map(|&w| CoverPiece { v: w & full, z: full })
            .collect(),
    );
    match refine_cover(&x, Topology::Inverse, supp, &lc) {
        Ok(f) => Ok((lc, f)),
        Err(RefineError::CoverGap { point }) => Err(DcatError::CoverGap(point)),
        Err(e) => Err(DcatError::Refine(e.to_string())),
    }
}

/// Rebuilds `t` from the pieces of `f`: each stage satisfies
/// `Γ_{U≤α} t = Γ_{U≤α-1} t ⊕ ⨁_w t ⊗ g(U_{α,w})`, and the last stage is `t`.
pub fn ltg_reconstruct(t: &DObj, f: &Filtration) -> Report {
    let n = t.base();
    let unit = DObj::unit(n);
    let mut r = Report::new();
    let mut cx = None;
    let mut acc = DObj::zero(n);
    for alpha in 0..f.stages.len() {
        for (_, u) in f.pieces_at(alpha) {
            let piece = t.tensor(&unit.gamma(u)).expect("same base");
            acc = acc.direct_sum(&piece).expect("same base");
        }
        let stage = t.gamma(f.stage(alpha));
        if acc != stage && cx.is_none() {
            cx = Some(format!("stage {alpha}: Γ t = {stage}, pieces sum to {acc}"));
        }
    }
    r.check(
        "stagewise triangles",
        format!("{} stages split as sums of pieces", f.stages.len()),
        cx,
    );
    r.check(
        "reconstruction",
        "t is the direct sum of t ⊗ g(U) over the pieces",
        (acc != *t).then(|| format!("t = {t}, pieces sum to {acc}")),
    );
    r
}

#[derive(Debug, Clone)]
pub struct LtgOutcome {
    pub filtration: Filtration,
    pub report: Report,
}

/// Local-to-global check for `t` against a cover of its support.
pub fn ltg_check(t: &DObj, cover: &[SubsetMask]) -> Result<LtgOutcome, DcatError> {
    let n = t.base();
    let supp = t.supp();
    let (lc, f) = ltg_filtration(n, supp, cover)?;
    let x = spectrum(n);
    let mut report = verify_filtration(&x, Topology::Inverse, supp, &lc, &f);
    report.extend(ltg_reconstruct(t, &f));
    Ok(LtgOutcome {
        filtration: f,
        report,
    })
}

/// Support and idempotent identities for `t` and `Y`; returns the first
/// violation.
pub fn support_identities(t: &DObj, y: SubsetMask) -> Option<String> {
    let s = t.supp();
    let full = SubsetMask::full(t.base());
    let y = y & full;
    let (gt, lt) = (t.gamma(y), t.loc(y));
    if gt.supp() != s & y {
        return Some(format!("supp Γ_Y t = {:?} but supp t ∩ Y = {:?}", gt.supp(), s & y));
    }
    if lt.supp() != s - y {
        return Some(format!("supp L t = {:?} but supp t minus Y = {:?}", lt.supp(), s - y));
    }
    if gt.direct_sum(&lt).ok().as_ref() != Some(t) {
        return Some("Γ_Y t ⊕ L t differs from t".to_owned());
    }
    if s.is_empty() != t.is_zero() {
        return Some("detection fails".to_owned());
    }
    let e = DObj::unit(t.base()).gamma(y);
    if (s - y).is_empty() && t.tensor(&e).ok().as_ref() != Some(t) {
        return Some("supp t ⊆ Y but t ⊗ Γ_Y 1 differs from t".to_owned());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ix: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(ix.iter().copied())
    }

    #[test]
    fn tensor_examples() {
        let t = DObj::new(1, [((0, 0), 2)]).unwrap();
        let u = DObj::new(1, [((0, 0), 3)]).unwrap();
        assert_eq!(t.tensor(&u).unwrap(), DObj::new(1, [((0, 0), 6)]).unwrap());
        let a = DObj::new(2, [((0, 0), 1)]).unwrap();
        let b = DObj::new(2, [((1, 0), 1)]).unwrap();
        assert!(a.tensor(&b).unwrap().is_zero());
        let t = DObj::parse(3, "{p0: [2@0, 1@-1], p2: [4@5]}").unwrap();
        assert_eq!(t.tensor(&DObj::unit(3)).unwrap(), t);
        assert_eq!(t.tensor(&DObj::unit(2)), Err(DcatError::BaseMismatch(3, 2)));
    }

    #[test]
    fn idempotent_examples() {
        let t = DObj::new(2, [((0, 0), 1), ((1, 0), 1)]).unwrap();
        assert_eq!(t.gamma(m(&[0])), DObj::new(2, [((0, 0), 1)]).unwrap());
        assert!(t.loc(m(&[0, 1])).is_zero());
        assert_eq!(DObj::unit(2).g(1), DObj::new(2, [((1, 0), 1)]).unwrap());
    }

    #[test]
    fn support_examples() {
        assert!(DObj::zero(3).supp().is_empty());
        let t = DObj::parse(3, "{p0: [1@0], p2: [4@5]}").unwrap();
        assert_eq!(t.supp(), m(&[0, 2]));
        assert_eq!(t.to_string(), "{p0: [1@0], p2: [4@5]}");
    }

    #[test]
    fn literal_errors() {
        assert!(DObj::parse(2, "{p2: [1@0]}").is_err());
        assert!(DObj::parse(2, "{p0: [1]}").is_err());
        assert!(DObj::parse(2, "p0: [1@0]").is_err());
        assert_eq!(DObj::parse(2, "{}").unwrap(), DObj::zero(2));
    }

    #[test]
    fn ltg_examples() {
        let t = DObj::new(3, [((0, 0), 1), ((1, 1), 2), ((2, -1), 1)]).unwrap();
        let cover = [m(&[0]), m(&[1]), m(&[2])];
        let out = ltg_check(&t, &cover).unwrap();
        assert!(out.report.passed(), "{}", out.report);

        let t = DObj::new(3, [((0, 0), 1), ((1, 0), 1)]).unwrap();
        let out = ltg_check(&t, &[m(&[0]), m(&[1, 2])]).unwrap();
        assert!(out.report.passed());
        assert_eq!(out.filtration.pieces[&(0, 0)], m(&[0]));
        assert_eq!(out.filtration.pieces[&(0, 1)], m(&[1]));

        assert_eq!(
            ltg_check(&t, &[m(&[0])]).unwrap_err(),
            DcatError::CoverGap("p1".into())
        );
    }

    #[test]
    fn identities_hold() {
        let t = DObj::parse(3, "{p0: [1@0], p2: [2@1]}").unwrap();
        for y in SubsetMask::full(3).subsets() {
            assert_eq!(support_identities(&t, y), None);
        }
    }
}
