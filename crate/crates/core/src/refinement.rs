//! Refinement of a locally closed cover of a weakly scattered subset into a
//! filtration by open stages, and an independent certificate checker.
//!
//! Given `C ⊆ X` and a cover `{W_j = V_j ∩ Z_j}` of `C`, the construction
//! works inside `X̄ = cl(C)` and peels off weakly isolated points stage by
//! stage. At stage `α` the ambient is `X̄ ∖ U_{≤α-1}`; each weakly isolated
//! point `w` of `C ∖ U_{≤α-1}` receives the piece `U_{α,w} = U_w ∩ V_j`,
//! where `U_w` is the smallest open neighbourhood of `w` in the ambient and
//! `j` is the first cover piece containing `w`.
//!
//! At stage 0, and at any later stage where `C ∖ U_{≤α-1}` is dense in the
//! ambient, `U_w ⊆ cl{w}`, so the pieces are pairwise disjoint and lie
//! inside their `W_j`. At other successor stages the smallest neighbourhood
//! can pick up points of `X̄ ∖ C` outside `cl{w}`, and no open choice can
//! avoid it (see `successor_stage_can_leave_support` below). There the
//! pieces are disjoint and refine the cover on `C`, which is all that the
//! idempotents `t ⊗ g(U_{α,w})` can see when `Supp(t) = C`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finposet::{FinPoset, SubsetMask, Topology};
use crate::report::Report;

/// Closed subsets examined by the weak-scatteredness pre-check before it
/// gives up and relies on the per-stage check alone.
pub const SCATTER_CHECK_BUDGET: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RefineError {
    #[error("set is not weakly scattered: closed set {closed} has no weakly isolated point")]
    NotWeaklyScattered { closed: String },
    #[error("point {point} of the set lies in no cover piece")]
    CoverGap { point: String },
    #[error("cover piece {index} is not locally closed: {reason}")]
    InvalidPiece { index: usize, reason: String },
    #[error("set is not scattered: perfect core {perfect}")]
    NotScattered { perfect: String },
    #[error("subset mentions points outside the poset")]
    ForeignSubset,
    #[error("malformed filtration file: {0}")]
    Format(String),
}

/// `W = v ∩ z` with `v` open and `z` closed in the working topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPiece {
    pub v: SubsetMask,
    pub z: SubsetMask,
}

impl CoverPiece {
    pub fn covered(&self) -> SubsetMask {
        self.v & self.z
    }

    /// Canonical presentation of a locally closed set: open hull and closure.
    pub fn from_locally_closed(
        x: &FinPoset,
        t: Topology,
        w: SubsetMask,
    ) -> Result<Self, RefineError> {
        if !x.contains_subset(w) {
            return Err(RefineError::ForeignSubset);
        }
        if !x.is_locally_closed(w, t) {
            return Err(RefineError::InvalidPiece {
                index: 0,
                reason: format!("{} is not open in its closure", x.format_subset(w)),
            });
        }
        Ok(Self {
            v: x.open_hull(w, t),
            z: x.closure(w, t),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocallyClosedCover {
    pub pieces: Vec<CoverPiece>,
}

impl LocallyClosedCover {
    pub fn new(pieces: Vec<CoverPiece>) -> Self {
        Self { pieces }
    }

    /// The single piece `X = X ∩ X`.
    pub fn whole(x: &FinPoset) -> Self {
        Self::new(vec![CoverPiece {
            v: x.full(),
            z: x.full(),
        }])
    }

    /// `{p} = U_p ∩ cl{p}` for every `p ∈ c`.
    pub fn singletons(x: &FinPoset, t: Topology, c: SubsetMask) -> Self {
        Self::new(
            c.iter()
                .map(|p| CoverPiece {
                    v: x.min_open_nbhd(p, t),
                    z: x.point_closure(p, t),
                })
                .collect(),
        )
    }

    pub fn union(&self) -> SubsetMask {
        self.pieces
            .iter()
            .fold(SubsetMask::EMPTY, |acc, p| acc | p.covered())
    }

    /// First piece (in input order) containing `w`.
    pub fn first_containing(&self, w: usize) -> Option<usize> {
        self.pieces.iter().position(|p| p.covered().contains(w))
    }

    fn validate(&self, x: &FinPoset, t: Topology) -> Result<(), RefineError> {
        for (index, p) in self.pieces.iter().enumerate() {
            if !x.contains_subset(p.v) || !x.contains_subset(p.z) {
                return Err(RefineError::ForeignSubset);
            }
            if !x.is_open(p.v, t) {
                return Err(RefineError::InvalidPiece {
                    index,
                    reason: format!("{} is not {t}-open", x.format_subset(p.v)),
                });
            }
            if !x.is_closed(p.z, t) {
                return Err(RefineError::InvalidPiece {
                    index,
                    reason: format!("{} is not {t}-closed", x.format_subset(p.z)),
                });
            }
        }
        Ok(())
    }
}

/// Stages `U_{≤0} ⊂ … ⊂ U_{≤δ}`, pieces `U_{α,w}` and index sets `I_α`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filtration {
    pub stages: Vec<SubsetMask>,
    pub pieces: BTreeMap<(usize, usize), SubsetMask>,
    /// Cover piece chosen for each `(α, w)`.
    pub cover_choice: BTreeMap<(usize, usize), usize>,
    pub index_sets: Vec<SubsetMask>,
    pub delta: usize,
}

impl Filtration {
    pub fn stage(&self, alpha: usize) -> SubsetMask {
        self.stages.get(alpha).copied().unwrap_or_default()
    }

    /// `U_{≤α-1}`, empty for `α = 0`.
    pub fn before(&self, alpha: usize) -> SubsetMask {
        if alpha == 0 {
            SubsetMask::EMPTY
        } else {
            self.stage(alpha - 1)
        }
    }

    pub fn pieces_at(&self, alpha: usize) -> impl Iterator<Item = (usize, SubsetMask)> + '_ {
        self.pieces
            .range((alpha, 0)..(alpha + 1, 0))
            .map(|(&(_, w), &u)| (w, u))
    }

    pub fn top(&self) -> SubsetMask {
        self.stages.last().copied().unwrap_or_default()
    }

    pub fn to_file(&self, x: &FinPoset, t: Topology, c: SubsetMask) -> FiltrationFile {
        let names = |s: SubsetMask| s.iter().map(|i| x.name(i).to_owned()).collect();
        FiltrationFile {
            topology: t,
            set: names(c),
            delta: self.delta,
            stages: self.stages.iter().map(|&s| names(s)).collect(),
            index_sets: self.index_sets.iter().map(|&s| names(s)).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|(&(stage, w), &u)| PieceRecord {
                    stage,
                    point: x.name(w).to_owned(),
                    cover_piece: self.cover_choice.get(&(stage, w)).copied(),
                    set: names(u),
                })
                .collect(),
        }
    }

    pub fn to_json(&self, x: &FinPoset, t: Topology, c: SubsetMask) -> String {
        serde_json::to_string_pretty(&self.to_file(x, t, c)).expect("serializable")
    }

    pub fn from_file(x: &FinPoset, file: &FiltrationFile) -> Result<Self, RefineError> {
        let mask = |names: &[String]| {
            x.subset_from_names(names)
                .map_err(|e| RefineError::Format(e.to_string()))
        };
        let mut f = Filtration {
            delta: file.delta,
            ..Default::default()
        };
        for s in &file.stages {
            f.stages.push(mask(s)?);
        }
        for s in &file.index_sets {
            f.index_sets.push(mask(s)?);
        }
        for p in &file.pieces {
            let w = x
                .index_of(&p.point)
                .ok_or_else(|| RefineError::Format(format!("unknown point {}", p.point)))?;
            f.pieces.insert((p.stage, w), mask(&p.set)?);
            if let Some(j) = p.cover_piece {
                f.cover_choice.insert((p.stage, w), j);
            }
        }
        Ok(f)
    }
}

/// Serialized filtration, with points named as in the poset file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationFile {
    pub topology: Topology,
    pub set: Vec<String>,
    pub delta: usize,
    pub stages: Vec<Vec<String>>,
    pub index_sets: Vec<Vec<String>>,
    pub pieces: Vec<PieceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub stage: usize,
    pub point: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_piece: Option<usize>,
    pub set: Vec<String>,
}

/// Weakly isolated points of `rest` inside the subspace `ambient`.
fn weakly_isolated_in(
    x: &FinPoset,
    t: Topology,
    ambient: SubsetMask,
    rest: SubsetMask,
) -> SubsetMask {
    SubsetMask::from_indices(rest.iter().filter(|&w| {
        (x.min_open_nbhd(w, t) & ambient & rest).is_subset(x.point_closure(w, t))
    }))
}

/// Exhaustive search for a relatively closed subset of `c` without a
/// weakly isolated point. `Ok(None)` means none exists; `Err(())` means
/// the closed-set budget was exceeded.
pub fn weak_scatter_counterexample(
    x: &FinPoset,
    t: Topology,
    c: SubsetMask,
) -> Result<Option<SubsetMask>, ()> {
    let ambient = x.closure(c, t);
    let closed = x
        .closed_subsets(ambient, t, SCATTER_CHECK_BUDGET)
        .ok_or(())?;
    Ok(closed.into_iter().find(|&f| {
        let trace = f & c;
        !trace.is_empty() && x.weakly_isolated_points(trace, t).is_empty()
    }))
}

pub fn refine_cover(
    x: &FinPoset,
    t: Topology,
    c: SubsetMask,
    cover: &LocallyClosedCover,
) -> Result<Filtration, RefineError> {
    if !x.contains_subset(c) {
        return Err(RefineError::ForeignSubset);
    }
    cover.validate(x, t)?;
    if let Some(p) = (c - cover.union()).first() {
        return Err(RefineError::CoverGap {
            point: x.name(p).to_owned(),
        });
    }
    if let Ok(Some(f)) = weak_scatter_counterexample(x, t, c) {
        return Err(RefineError::NotWeaklyScattered {
            closed: x.format_subset(f),
        });
    }

    let closure = x.closure(c, t);
    let mut f = Filtration::default();
    let mut covered = SubsetMask::EMPTY;
    let mut alpha = 0;
    while !(c - covered).is_empty() {
        let ambient = closure - covered;
        let rest = c - covered;
        let isolated = weakly_isolated_in(x, t, ambient, rest);
        if isolated.is_empty() {
            return Err(RefineError::NotWeaklyScattered {
                closed: x.format_subset(ambient),
            });
        }
        let mut stage = covered;
        for w in x.lexicographic(isolated) {
            let j = cover
                .first_containing(w)
                .expect("cover gap ruled out above");
            let piece = x.min_open_nbhd(w, t) & ambient & cover.pieces[j].v;
            f.pieces.insert((alpha, w), piece);
            f.cover_choice.insert((alpha, w), j);
            stage |= piece;
        }
        f.stages.push(stage);
        f.index_sets.push(isolated);
        covered = stage;
        alpha += 1;
    }
    f.delta = f.stages.len().saturating_sub(1);
    Ok(f)
}

/// Checks every certificate property of `f` from scratch.
pub fn verify_filtration(
    x: &FinPoset,
    t: Topology,
    c: SubsetMask,
    cover: &LocallyClosedCover,
    f: &Filtration,
) -> Report {
    let mut r = Report::new();
    let name = |s: SubsetMask| x.format_subset(s);
    let closure = x.closure(c, t);
    let n_stages = f.stages.len();

    // structure
    let mut cx = None;
    if f.index_sets.len() != n_stages {
        cx = Some(format!(
            "{} stages but {} index sets",
            n_stages,
            f.index_sets.len()
        ));
    } else if f.delta != n_stages.saturating_sub(1) {
        cx = Some(format!("delta {} with {} stages", f.delta, n_stages));
    } else if let Some(a) = (1..n_stages).find(|&a| {
        !f.stages[a - 1].is_subset(f.stages[a]) || f.stages[a - 1] == f.stages[a]
    }) {
        cx = Some(format!("stage {a} does not strictly extend stage {}", a - 1));
    } else if let Some((&(a, w), _)) = f
        .pieces
        .iter()
        .find(|(&(a, w), _)| a >= n_stages || !f.index_sets[a].contains(w))
    {
        cx = Some(format!("piece ({a},{}) outside the index sets", x.name(w)));
    } else if let Some(a) =
        (0..n_stages).find(|&a| f.pieces_at(a).count() != f.index_sets[a].len())
    {
        cx = Some(format!("stage {a} is missing pieces"));
    }
    let structural = cx.is_none();
    r.check(
        "structure",
        "stages strictly increase, one piece per index point",
        cx,
    );
    if !structural {
        return r;
    }

    let cover_ok = cover.validate(x, t).is_ok();
    r.check(
        "cover pieces locally closed",
        "each V_j open and Z_j closed",
        (!cover_ok).then(|| "invalid cover piece".to_owned()),
    );

    // (i)
    let mut cx = None;
    if n_stages > 0 {
        let expected = x.weakly_isolated_points(c, t);
        if f.index_sets[0] != expected {
            cx = Some(format!(
                "I_0 = {} but weakly isolated points are {}",
                name(f.index_sets[0]),
                name(expected)
            ));
        }
        let mut union = SubsetMask::EMPTY;
        for (w, u) in f.pieces_at(0) {
            if cx.is_some() {
                break;
            }
            if !u.contains(w) {
                cx = Some(format!("U_(0,{}) does not contain its point", x.name(w)));
            } else if !x.is_relatively_open(u, closure, t) {
                cx = Some(format!("U_(0,{}) = {} not open in cl(C)", x.name(w), name(u)));
            }
            union |= u;
        }
        if cx.is_none() && union != f.stages[0] {
            cx = Some(format!(
                "U_<=0 = {} but pieces give {}",
                name(f.stages[0]),
                name(union)
            ));
        }
    }
    r.check(
        "(i) stage 0",
        "I_0 = weakly isolated points of C; pieces open neighbourhoods in cl(C)",
        cx,
    );

    // stage-0 disjointness is strict
    r.check(
        "stage-0 disjointness",
        "U_(0,w) pairwise disjoint",
        overlapping_pair(x, f, 0, x.full()),
    );

    // (ii)
    let mut cx = None;
    'stages: for a in 1..n_stages {
        let prev = f.stages[a - 1];
        let ambient = closure - prev;
        let rest = c - prev;
        let expected = weakly_isolated_in(x, t, ambient, rest);
        if f.index_sets[a] != expected {
            cx = Some(format!(
                "I_{a} = {} but weakly isolated points are {}",
                name(f.index_sets[a]),
                name(expected)
            ));
            break;
        }
        let mut union = prev;
        for (w, u) in f.pieces_at(a) {
            if !u.contains(w) {
                cx = Some(format!("U_({a},{}) does not contain its point", x.name(w)));
                break 'stages;
            }
            if !x.is_relatively_open(u, ambient, t) {
                cx = Some(format!(
                    "U_({a},{}) = {} not open in cl(C) minus U_<={}",
                    x.name(w),
                    name(u),
                    a - 1
                ));
                break 'stages;
            }
            union |= u;
        }
        if union != f.stages[a] {
            cx = Some(format!(
                "U_<={a} = {} but U_<={} plus pieces gives {}",
                name(f.stages[a]),
                a - 1,
                name(union)
            ));
            break;
        }
    }
    r.check(
        "(ii) successor stages",
        "I_a = weakly isolated points of C minus U_<=a-1; pieces open in the remaining ambient",
        cx,
    );

    let cx = (1..n_stages).find_map(|a| overlapping_pair(x, f, a, c));
    r.check(
        "successor disjointness on C",
        "traces of U_(a,w) on C pairwise disjoint for a >= 1",
        cx,
    );

    let cx = f
        .stages
        .iter()
        .enumerate()
        .find(|(_, &s)| !x.is_relatively_open(s, closure, t))
        .map(|(a, &s)| format!("U_<={a} = {} not open in cl(C)", name(s)));
    r.check("stage opens", "every U_<=a open in cl(C)", cx);

    r.pass(
        "(iii) limit stages",
        "vacuous: finite carrier, no limit ordinal <= delta",
    );

    // (iv)
    let mut cx = None;
    let union = f
        .pieces
        .values()
        .fold(SubsetMask::EMPTY, |acc, &u| acc | u);
    if let Some(p) = (c - union).first() {
        cx = Some(format!("point {} of C not covered", x.name(p)));
    }
    for (&(a, w), &u) in &f.pieces {
        if cx.is_some() {
            break;
        }
        if !x.is_locally_closed(u, t) {
            cx = Some(format!("U_({a},{}) = {} not locally closed", x.name(w), name(u)));
        } else if !cover
            .pieces
            .iter()
            .any(|p| (u & c).is_subset(p.covered()))
        {
            cx = Some(format!(
                "U_({a},{}) meets C in {}, inside no W_j",
                x.name(w),
                name(u & c)
            ));
        }
    }
    r.check(
        "(iv) refining cover",
        "pieces locally closed, cover C, and refine {W_j} on C",
        cx,
    );

    let cx = f.pieces.iter().find_map(|(&(a, w), &u)| {
        (!(u & c).is_subset(x.point_closure(w, t))).then(|| {
            format!(
                "U_({a},{}) meets C outside cl{{{}}}",
                x.name(w),
                x.name(w)
            )
        })
    });
    r.check(
        "neighbourhood containment",
        "U_(a,w) meets C only inside cl{w}",
        cx,
    );

    r.check(
        "termination bound",
        format!("delta = {} for |C| = {}", f.delta, c.len()),
        (f.delta > c.len()).then(|| format!("delta {} exceeds |C|", f.delta)),
    );

    // strict claims at the stages where the density argument applies
    let dense: Vec<usize> = (0..n_stages)
        .filter(|&a| {
            let prev = f.before(a);
            x.closure(c - prev, t) == closure - prev
        })
        .collect();
    if dense.is_empty() {
        r.skip("strict containment at dense stages", "no stage has C dense in its ambient");
    } else {
        let mut cx = None;
        for &a in &dense {
            for (w, u) in f.pieces_at(a) {
                if !u.is_subset(x.point_closure(w, t)) {
                    cx = Some(format!("U_({a},{}) not inside cl{{{}}}", x.name(w), x.name(w)));
                } else if !cover.pieces.iter().any(|p| u.is_subset(p.covered())) {
                    cx = Some(format!("U_({a},{}) inside no W_j", x.name(w)));
                }
            }
            if cx.is_none() {
                cx = overlapping_pair(x, f, a, x.full());
            }
            if cx.is_some() {
                break;
            }
        }
        r.check(
            "strict containment at dense stages",
            format!(
                "pieces inside cl{{w}} and some W_j, pairwise disjoint, at {} of {} stages",
                dense.len(),
                n_stages
            ),
            cx,
        );
    }
    r
}

fn overlapping_pair(x: &FinPoset, f: &Filtration, alpha: usize, within: SubsetMask) -> Option<String> {
    let pieces: Vec<(usize, SubsetMask)> = f.pieces_at(alpha).collect();
    for (i, &(w, u)) in pieces.iter().enumerate() {
        for &(w2, u2) in &pieces[i + 1..] {
            if !(u & u2 & within).is_empty() {
                return Some(format!(
                    "U_({alpha},{}) and U_({alpha},{}) overlap",
                    x.name(w),
                    x.name(w2)
                ));
            }
        }
    }
    None
}

/// For scattered `c`: do the traces of the pieces reduce to `{w}` and the
/// stages to the rank filtration `C_{≤α}`? When `c` is closed the pieces
/// themselves must be the singletons.
pub fn scattered_degenerate_check(
    x: &FinPoset,
    t: Topology,
    c: SubsetMask,
    f: &Filtration,
) -> Result<bool, RefineError> {
    let prof = x.cb_rank_and_perfect(c, t);
    if !prof.perfect.is_empty() {
        return Err(RefineError::NotScattered {
            perfect: x.format_subset(prof.perfect),
        });
    }
    let expected_stages = prof.max_rank().map_or(0, |r| r + 1);
    if f.stages.len() != expected_stages {
        return Ok(false);
    }
    let closed = x.is_closed(c, t);
    let stages_match = (0..expected_stages).all(|a| f.stages[a] & c == prof.rank_at_most(a));
    let pieces_match = f.pieces.iter().all(|(&(_, w), &u)| {
        let single = SubsetMask::singleton(w);
        u & c == single && (!closed || u == single)
    });
    Ok(stages_match && pieces_match)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ix: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(ix.iter().copied())
    }

    #[test]
    fn two_chain_inverse_whole_cover() {
        let x = FinPoset::chain(&["a", "b"]);
        let f = refine_cover(&x, Topology::Inverse, x.full(), &LocallyClosedCover::whole(&x))
            .unwrap();
        assert_eq!(f.delta, 1);
        assert_eq!(f.index_sets, vec![s(&[1]), s(&[0])]);
        assert_eq!(f.pieces[&(0, 1)], s(&[1]));
        assert_eq!(f.pieces[&(1, 0)], s(&[0]));
        assert_eq!(f.stages, vec![s(&[1]), s(&[0, 1])]);
        let r = verify_filtration(&x, Topology::Inverse, x.full(), &LocallyClosedCover::whole(&x), &f);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn empty_set_gives_trivial_filtration() {
        let x = FinPoset::chain(&["a", "b"]);
        let f = refine_cover(&x, Topology::Inverse, SubsetMask::EMPTY, &LocallyClosedCover::default())
            .unwrap();
        assert_eq!(f.delta, 0);
        assert!(f.stages.is_empty());
        assert!(f.pieces.is_empty());
        assert!(scattered_degenerate_check(&x, Topology::Inverse, SubsetMask::EMPTY, &f).unwrap());
    }

    #[test]
    fn antichain_zariski_two_pieces() {
        let x = FinPoset::antichain(&["p", "q"]);
        let cover = LocallyClosedCover::new(vec![
            CoverPiece { v: s(&[0]), z: x.full() },
            CoverPiece { v: s(&[1]), z: x.full() },
        ]);
        let f = refine_cover(&x, Topology::Zariski, x.full(), &cover).unwrap();
        assert_eq!(f.delta, 0);
        assert_eq!(f.pieces[&(0, 0)], s(&[0]));
        assert_eq!(f.pieces[&(0, 1)], s(&[1]));
        assert!(verify_filtration(&x, Topology::Zariski, x.full(), &cover, &f).passed());
        assert!(scattered_degenerate_check(&x, Topology::Zariski, x.full(), &f).unwrap());
    }

    #[test]
    fn three_chain_matches_rank_filtration() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let t = Topology::Inverse;
        let cover = LocallyClosedCover::singletons(&x, t, x.full());
        let f = refine_cover(&x, t, x.full(), &cover).unwrap();
        assert_eq!(f.stages, vec![s(&[2]), s(&[1, 2]), s(&[0, 1, 2])]);
        assert!(scattered_degenerate_check(&x, t, x.full(), &f).unwrap());
    }

    #[test]
    fn cover_gap_is_reported() {
        let x = FinPoset::chain(&["a", "b"]);
        let t = Topology::Inverse;
        let cover = LocallyClosedCover::singletons(&x, t, s(&[1]));
        assert_eq!(
            refine_cover(&x, t, x.full(), &cover).unwrap_err(),
            RefineError::CoverGap { point: "a".into() }
        );
    }

    #[test]
    fn invalid_piece_is_rejected() {
        let x = FinPoset::chain(&["a", "b"]);
        // {a} is not an up-set, so not inverse-open
        let cover = LocallyClosedCover::new(vec![CoverPiece { v: s(&[0]), z: x.full() }]);
        assert!(matches!(
            refine_cover(&x, Topology::Inverse, x.full(), &cover),
            Err(RefineError::InvalidPiece { index: 0, .. })
        ));
    }

    #[test]
    fn verifier_flags_overlapping_stage_zero_pieces() {
        let x = FinPoset::antichain(&["p", "q"]);
        let t = Topology::Inverse;
        let cover = LocallyClosedCover::whole(&x);
        let mut f = refine_cover(&x, t, x.full(), &cover).unwrap();
        f.pieces.insert((0, 0), x.full());
        let r = verify_filtration(&x, t, x.full(), &cover, &f);
        let d = r.find("stage-0 disjointness").unwrap();
        assert_eq!(d.status, crate::report::Status::Fail);
        assert!(d.counterexample.as_deref().unwrap().contains("U_(0,p) and U_(0,q)"));
    }

    #[test]
    fn verifier_flags_missing_point() {
        let x = FinPoset::chain(&["a", "b"]);
        let t = Topology::Inverse;
        let cover = LocallyClosedCover::whole(&x);
        let mut f = refine_cover(&x, t, x.full(), &cover).unwrap();
        f.stages.pop();
        f.index_sets.pop();
        f.pieces.remove(&(1, 0));
        f.delta = 0;
        let r = verify_filtration(&x, t, x.full(), &cover, &f);
        assert!(!r.passed());
        assert_eq!(
            r.find("(iv) refining cover").unwrap().status,
            crate::report::Status::Fail
        );
    }

    /// Chain y < z < w, C = {y, w}, cover {w}, {y}. Stage 0 must be {w};
    /// every open neighbourhood of y in the remaining ambient {y, z}
    /// contains z, which lies in neither cover piece. The piece still
    /// refines the cover on C.
    #[test]
    fn successor_stage_can_leave_support() {
        let x = FinPoset::chain(&["y", "z", "w"]);
        let t = Topology::Inverse;
        let c = s(&[0, 2]);
        let cover = LocallyClosedCover::new(vec![
            CoverPiece::from_locally_closed(&x, t, s(&[2])).unwrap(),
            CoverPiece::from_locally_closed(&x, t, s(&[0])).unwrap(),
        ]);
        let f = refine_cover(&x, t, c, &cover).unwrap();
        assert_eq!(f.pieces[&(1, 0)], s(&[0, 1]));
        // no open subset of the ambient {y,z} containing y avoids z
        let ambient = s(&[0, 1]);
        let candidates = ambient
            .subsets()
            .filter(|&u| u.contains(0) && x.is_relatively_open(u, ambient, t));
        assert!(candidates.into_iter().all(|u| u.contains(1)));
        let r = verify_filtration(&x, t, c, &cover, &f);
        assert!(r.passed(), "{r}");
        assert!(scattered_degenerate_check(&x, t, c, &f).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let x = FinPoset::chain(&["a", "b", "c"]);
        let t = Topology::Inverse;
        let f = refine_cover(&x, t, x.full(), &LocallyClosedCover::whole(&x)).unwrap();
        let text = f.to_json(&x, t, x.full());
        let file: FiltrationFile = serde_json::from_str(&text).unwrap();
        assert_eq!(Filtration::from_file(&x, &file).unwrap(), f);
    }
}
