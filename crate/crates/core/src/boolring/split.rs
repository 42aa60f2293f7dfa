//! Atoms and disjoint splittings of idempotents.

use num_rational::Rational64;
use serde::Serialize;

use super::{AlgebraError, BoolAlg, Element, Fincof, IntervalSet};
use crate::ordinal::Ordinal;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomsBelow {
    NoAtomsBelow,
    FinitelyManyAtomsBelow(Vec<Element>),
    InfinitelyManyAtomsBelow,
}

pub fn is_atom(alg: &BoolAlg, e: &Element) -> Result<bool, AlgebraError> {
    if let BoolAlg::LoewyQuotient(..) = alg {
        return is_atom(&alg.normalized(), e);
    }
    alg.check(e)?;
    Ok(match (alg, e) {
        (BoolAlg::FinSet(_), Element::Fin(m)) => m.count_ones() == 1,
        (BoolAlg::Fincof, Element::Fincof(f)) => !f.cofinite && f.exceptions.len() == 1,
        (BoolAlg::OrdInt(_), Element::Ord(s)) => {
            matches!(s.intervals(), [(a, b)] if *b == a.succ())
        }
        (BoolAlg::RatInt, _) => false,
        (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
            (l.is_zero() && is_atom(b, r)?) || (r.is_zero() && is_atom(a, l)?)
        }
        _ => unreachable!(),
    })
}

fn ord_atom(x: &Ordinal) -> Element {
    Element::Ord(IntervalSet::interval(x.clone(), x.succ()))
}

pub fn atoms_profile(alg: &BoolAlg, e: &Element) -> Result<AtomsBelow, AlgebraError> {
    if let BoolAlg::LoewyQuotient(..) = alg {
        return atoms_profile(&alg.normalized(), e);
    }
    alg.check(e)?;
    let atoms: Vec<Element> = match (alg, e) {
        (BoolAlg::FinSet(_), Element::Fin(m)) => (0..64)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| Element::Fin(1 << i))
            .collect(),
        (BoolAlg::Fincof, Element::Fincof(f)) => {
            if f.cofinite {
                return Ok(AtomsBelow::InfinitelyManyAtomsBelow);
            }
            f.exceptions
                .iter()
                .map(|&n| Element::Fincof(Fincof::finite([n])))
                .collect()
        }
        (BoolAlg::OrdInt(_), Element::Ord(s)) => {
            let mut v = Vec::new();
            for (a, b) in s.intervals() {
                if *b >= a.add(&Ordinal::omega()) {
                    return Ok(AtomsBelow::InfinitelyManyAtomsBelow);
                }
                let len = b
                    .checked_sub_left(a)
                    .and_then(|d| d.as_nat())
                    .expect("finite interval");
                let mut x = a.clone();
                for _ in 0..len {
                    v.push(ord_atom(&x));
                    x = x.succ();
                }
            }
            v
        }
        (BoolAlg::RatInt, _) => Vec::new(),
        (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
            let side = |alg: &BoolAlg, x: &Element| atoms_profile(alg, x);
            match (side(a, l)?, side(b, r)?) {
                (AtomsBelow::InfinitelyManyAtomsBelow, _) | (_, AtomsBelow::InfinitelyManyAtomsBelow) => {
                    return Ok(AtomsBelow::InfinitelyManyAtomsBelow)
                }
                (pl, pr) => {
                    let list = |p: AtomsBelow| match p {
                        AtomsBelow::FinitelyManyAtomsBelow(v) => v,
                        _ => Vec::new(),
                    };
                    let mut v: Vec<Element> = list(pl)
                        .into_iter()
                        .map(|x| Element::pair(x, b.zero()))
                        .collect();
                    v.extend(list(pr).into_iter().map(|x| Element::pair(a.zero(), x)));
                    v
                }
            }
        }
        _ => unreachable!(),
    };
    Ok(if atoms.is_empty() {
        AtomsBelow::NoAtomsBelow
    } else {
        AtomsBelow::FinitelyManyAtomsBelow(atoms)
    })
}

/// Splits a nonzero non-atom `e` into two nonzero disjoint pieces whose
/// join is `e`. Returns `None` for atoms.
pub fn split_idempotent(
    alg: &BoolAlg,
    e: &Element,
) -> Result<Option<(Element, Element)>, AlgebraError> {
    if let BoolAlg::LoewyQuotient(..) = alg {
        return split_idempotent(&alg.normalized(), e);
    }
    alg.check(e)?;
    if e.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    if is_atom(alg, e)? {
        return Ok(None);
    }
    Ok(Some(match (alg, e) {
        (BoolAlg::FinSet(_), Element::Fin(m)) => {
            let low = m & m.wrapping_neg();
            (Element::Fin(low), Element::Fin(m & !low))
        }
        (BoolAlg::Fincof, Element::Fincof(f)) => {
            let n = f.first().expect("nonzero");
            let atom = Fincof::finite([n]);
            (Element::Fincof(atom.clone()), Element::Fincof(f.meet(&atom.complement())))
        }
        (BoolAlg::OrdInt(_), Element::Ord(s)) => split_intervals(s, |a, b| {
            let mid = a.succ();
            debug_assert!(mid < *b);
            mid
        }),
        (BoolAlg::RatInt, Element::Rat(s)) => {
            split_intervals(s, |a, b| (a + b) / Rational64::from_integer(2))
        }
        (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
            if l.is_zero() {
                let (x, y) = split_idempotent(b, r)?.expect("not an atom");
                (Element::pair(a.zero(), x), Element::pair(a.zero(), y))
            } else if r.is_zero() {
                let (x, y) = split_idempotent(a, l)?.expect("not an atom");
                (Element::pair(x, b.zero()), Element::pair(y, b.zero()))
            } else {
                (
                    Element::pair((**l).clone(), b.zero()),
                    Element::pair(a.zero(), (**r).clone()),
                )
            }
        }
        _ => unreachable!(),
    }))
}

/// Several intervals: first interval against the rest. One interval
/// `[a, b)`: cut at `mid(a, b)`.
fn split_intervals<T: Ord + Clone>(
    s: &IntervalSet<T>,
    mid: impl Fn(&T, &T) -> T,
) -> (Element, Element)
where
    IntervalSet<T>: IntoElement,
{
    let iv = s.intervals();
    if iv.len() > 1 {
        let first = IntervalSet::from_intervals(vec![iv[0].clone()]);
        let rest = IntervalSet::from_intervals(iv[1..].to_vec());
        (first.into_element(), rest.into_element())
    } else {
        let (a, b) = &iv[0];
        let m = mid(a, b);
        (
            IntervalSet::interval(a.clone(), m.clone()).into_element(),
            IntervalSet::interval(m, b.clone()).into_element(),
        )
    }
}

trait IntoElement {
    fn into_element(self) -> Element;
}

impl IntoElement for IntervalSet<Ordinal> {
    fn into_element(self) -> Element {
        Element::Ord(self)
    }
}

impl IntoElement for IntervalSet<Rational64> {
    fn into_element(self) -> Element {
        Element::Rat(self)
    }
}

/// Complete binary tree of disjoint splittings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitTree {
    #[serde(serialize_with = "display_element")]
    pub element: Element,
    pub children: Option<Box<(SplitTree, SplitTree)>>,
}

fn display_element<S: serde::Serializer>(e: &Element, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(e)
}

impl SplitTree {
    pub fn leaves(&self) -> Vec<&Element> {
        match &self.children {
            None => vec![&self.element],
            Some(c) => {
                let mut v = c.0.leaves();
                v.extend(c.1.leaves());
                v
            }
        }
    }

    pub fn depth(&self) -> usize {
        match &self.children {
            None => 0,
            Some(c) => 1 + c.0.depth().max(c.1.depth()),
        }
    }

    /// Indented rendering, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, "");
        out
    }

    fn render_into(&self, out: &mut String, path: &str) {
        let indent = "  ".repeat(path.len());
        let label = if path.is_empty() { "root" } else { path };
        out.push_str(&format!("{indent}{label}: {}\n", self.element));
        if let Some(c) = &self.children {
            c.0.render_into(out, &format!("{path}L"));
            c.1.render_into(out, &format!("{path}R"));
        }
    }
}

/// Splits `e` repeatedly to the given depth, certifying that no ideal
/// inside `(e)` is uniform at that depth.
pub fn uniformity_refuter(
    alg: &BoolAlg,
    e: &Element,
    depth: usize,
) -> Result<SplitTree, AlgebraError> {
    let alg = alg.normalized();
    alg.check(e)?;
    if e.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    grow(&alg, e.clone(), depth, String::new())
}

fn grow(alg: &BoolAlg, e: Element, depth: usize, path: String) -> Result<SplitTree, AlgebraError> {
    if depth == 0 {
        return Ok(SplitTree {
            element: e,
            children: None,
        });
    }
    let Some((l, r)) = split_idempotent(alg, &e)? else {
        let at = if path.is_empty() { "root".to_owned() } else { path };
        return Err(AlgebraError::AtomEncountered(at));
    };
    let left = grow(alg, l, depth - 1, format!("{path}L"))?;
    let right = grow(alg, r, depth - 1, format!("{path}R"))?;
    Ok(SplitTree {
        element: e,
        children: Some(Box::new((left, right))),
    })
}

/// Re-checks a split tree from scratch.
pub fn verify_split_tree(alg: &BoolAlg, root: &Element, tree: &SplitTree, depth: usize) -> Report {
    let alg = alg.normalized();
    let mut r = Report::new();
    let leaves = tree.leaves();
    r.check(
        "leaf count",
        format!("{} leaves at depth {depth}", leaves.len()),
        (leaves.len() != 1 << depth || tree.depth() != depth)
            .then(|| format!("expected {} leaves", 1usize << depth)),
    );
    r.check(
        "root",
        "tree splits the given element",
        (tree.element != *root).then(|| format!("root is {}", tree.element)),
    );
    let cx = leaves.iter().find_map(|x| {
        if !alg.contains(x) {
            Some(format!("{x} not in {alg}"))
        } else if x.is_zero() {
            Some("zero leaf".to_owned())
        } else if alg.le(x, root).ok() != Some(true) {
            Some(format!("{x} not below {root}"))
        } else {
            None
        }
    });
    r.check("leaves nonzero and below root", "every leaf e_i satisfies 0 < e_i <= e", cx);
    let mut cx = None;
    'outer: for (i, x) in leaves.iter().enumerate() {
        for y in &leaves[i + 1..] {
            if !alg.meet(x, y).map(|m| m.is_zero()).unwrap_or(false) {
                cx = Some(format!("{x} and {y} meet"));
                break 'outer;
            }
        }
    }
    r.check(
        "pairwise disjoint",
        format!("{} pairwise meets are zero", leaves.len() * leaves.len().saturating_sub(1) / 2),
        cx,
    );
    let mut cx = None;
    let mut stack = vec![tree];
    while let Some(n) = stack.pop() {
        if let Some(c) = &n.children {
            if alg.join(&c.0.element, &c.1.element).ok().as_ref() != Some(&n.element) {
                cx = Some(format!("children of {} do not join to it", n.element));
                break;
            }
            stack.push(&c.0);
            stack.push(&c.1);
        }
    }
    r.check("splits exact", "each node is the join of its children", cx);
    r
}
