//! Symbolic Boolean rings.
//!
//! Each [`BoolAlg`] is built from a small closed family of constructors and
//! every [`Element`] carries a unique normal form, so equality of elements
//! is structural equality. Ring multiplication is [`BoolAlg::meet`] and
//! ring addition is [`BoolAlg::sym_diff`].

mod fincof;
mod interval;
mod loewy;
mod parse;
mod sample;
mod split;

use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::ordinal::Ordinal;

pub use fincof::Fincof;
pub use interval::IntervalSet;
pub(crate) use loewy::next_multiple;
pub use loewy::{in_loewy_ideal, loewy_profile, quotient_by_loewy, quotient_map, LoewyProfile};
pub use parse::{parse_descriptor, parse_element};
pub use sample::random_element;
pub use split::{
    atoms_profile, is_atom, split_idempotent, uniformity_refuter, verify_split_tree, AtomsBelow,
    SplitTree,
};

/// Largest `n` for `FinSet(n)` (elements are `u64` bitmasks).
pub const MAX_FINSET: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element {element} does not belong to {algebra}")]
    AlgebraMismatch { algebra: String, element: String },
    #[error("operation needs a nonzero element")]
    ZeroElement,
    #[error("atom reached at split path `{0}`")]
    AtomEncountered(String),
    #[error("{0} is not an atom")]
    NotAtom(String),
    #[error("prime {0} is not isolated")]
    NotIsolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Descriptor of a Boolean algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolAlg {
    /// All subsets of `{0, …, n-1}`; `FinSet(0)` is the zero ring.
    FinSet(u32),
    /// Finite and cofinite subsets of ℕ.
    Fincof,
    /// Finite unions of intervals `[a, b)` of `[0, λ)`.
    OrdInt(Ordinal),
    /// Finite unions of intervals `[p, q)` of `[0, 1) ∩ ℚ`.
    RatInt,
    Product(Box<BoolAlg>, Box<BoolAlg>),
    /// `A / s_α A`; see [`BoolAlg::normalized`].
    LoewyQuotient(Box<BoolAlg>, Ordinal),
}

/// Normal-form element of some [`BoolAlg`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Fin(u64),
    Fincof(Fincof),
    Ord(IntervalSet<Ordinal>),
    Rat(IntervalSet<Rational64>),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(l: Element, r: Element) -> Self {
        Element::Pair(Box::new(l), Box::new(r))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Fin(m) => *m == 0,
            Element::Fincof(f) => f.is_empty(),
            Element::Ord(s) => s.is_empty(),
            Element::Rat(s) => s.is_empty(),
            Element::Pair(l, r) => l.is_zero() && r.is_zero(),
        }
    }
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl BoolAlg {
    pub fn finset(n: u32) -> Self {
        BoolAlg::FinSet(n)
    }

    pub fn ordint(lambda: Ordinal) -> Self {
        BoolAlg::OrdInt(lambda)
    }

    pub fn product(l: BoolAlg, r: BoolAlg) -> Self {
        BoolAlg::Product(Box::new(l), Box::new(r))
    }

    pub fn quotient(base: BoolAlg, alpha: Ordinal) -> Self {
        BoolAlg::LoewyQuotient(Box::new(base), alpha)
    }

    /// Replaces every `LoewyQuotient` by its concrete base-family form.
    pub fn normalized(&self) -> BoolAlg {
        match self {
            BoolAlg::LoewyQuotient(b, alpha) => quotient_by_loewy(&b.normalized(), alpha),
            BoolAlg::Product(l, r) => BoolAlg::product(l.normalized(), r.normalized()),
            other => other.clone(),
        }
    }

    /// `0 = 1`.
    pub fn is_trivial(&self) -> bool {
        match self {
            BoolAlg::FinSet(0) => true,
            BoolAlg::OrdInt(l) => l.is_zero(),
            BoolAlg::Product(l, r) => l.is_trivial() && r.is_trivial(),
            BoolAlg::LoewyQuotient(..) => self.normalized().is_trivial(),
            _ => false,
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            BoolAlg::FinSet(_) => Element::Fin(0),
            BoolAlg::Fincof => Element::Fincof(Fincof::default()),
            BoolAlg::OrdInt(_) => Element::Ord(IntervalSet::empty()),
            BoolAlg::RatInt => Element::Rat(IntervalSet::empty()),
            BoolAlg::Product(l, r) => Element::pair(l.zero(), r.zero()),
            BoolAlg::LoewyQuotient(..) => self.normalized().zero(),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            BoolAlg::FinSet(n) => Element::Fin(finset_mask(*n)),
            BoolAlg::Fincof => Element::Fincof(Fincof::cofinite([])),
            BoolAlg::OrdInt(l) => Element::Ord(IntervalSet::interval(Ordinal::zero(), l.clone())),
            BoolAlg::RatInt => Element::Rat(IntervalSet::interval(q(0, 1), q(1, 1))),
            BoolAlg::Product(l, r) => Element::pair(l.one(), r.one()),
            BoolAlg::LoewyQuotient(..) => self.normalized().one(),
        }
    }

    fn mismatch(&self, e: &Element) -> AlgebraError {
        AlgebraError::AlgebraMismatch {
            algebra: self.to_string(),
            element: format!("{e:?}"),
        }
    }

    /// Whether `e` is a normal-form element of this algebra.
    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (BoolAlg::FinSet(n), Element::Fin(m)) => m & !finset_mask(*n) == 0,
            (BoolAlg::Fincof, Element::Fincof(_)) => true,
            (BoolAlg::OrdInt(l), Element::Ord(s)) => {
                s.is_normalized() && s.within(&Ordinal::zero(), l)
            }
            (BoolAlg::RatInt, Element::Rat(s)) => s.is_normalized() && s.within(&q(0, 1), &q(1, 1)),
            (BoolAlg::Product(a, b), Element::Pair(l, r)) => a.contains(l) && b.contains(r),
            (BoolAlg::LoewyQuotient(..), e) => self.normalized().contains(e),
            _ => false,
        }
    }

    pub fn check(&self, e: &Element) -> Result<(), AlgebraError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(self.mismatch(e))
        }
    }

    pub fn meet(&self, e: &Element, f: &Element) -> Result<Element, AlgebraError> {
        self.check(e)?;
        self.check(f)?;
        Ok(meet_unchecked(e, f))
    }

    pub fn join(&self, e: &Element, f: &Element) -> Result<Element, AlgebraError> {
        self.check(e)?;
        self.check(f)?;
        Ok(join_unchecked(e, f))
    }

    pub fn complement(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.check(e)?;
        Ok(self.complement_unchecked(e))
    }

    /// `e ∧ ¬f`.
    pub fn difference(&self, e: &Element, f: &Element) -> Result<Element, AlgebraError> {
        let nf = self.complement(f)?;
        self.meet(e, &nf)
    }

    /// Ring addition.
    pub fn sym_diff(&self, e: &Element, f: &Element) -> Result<Element, AlgebraError> {
        let a = self.difference(e, f)?;
        let b = self.difference(f, e)?;
        self.join(&a, &b)
    }

    pub fn le(&self, e: &Element, f: &Element) -> Result<bool, AlgebraError> {
        Ok(self.meet(e, f)? == *e)
    }

    pub(crate) fn complement_unchecked(&self, e: &Element) -> Element {
        match (self, e) {
            (BoolAlg::FinSet(n), Element::Fin(m)) => Element::Fin(!m & finset_mask(*n)),
            (BoolAlg::Fincof, Element::Fincof(f)) => Element::Fincof(f.complement()),
            (BoolAlg::OrdInt(l), Element::Ord(s)) => Element::Ord(s.complement(&Ordinal::zero(), l)),
            (BoolAlg::RatInt, Element::Rat(s)) => Element::Rat(s.complement(&q(0, 1), &q(1, 1))),
            (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
                Element::pair(a.complement_unchecked(l), b.complement_unchecked(r))
            }
            (BoolAlg::LoewyQuotient(..), e) => self.normalized().complement_unchecked(e),
            _ => unreachable!("checked by caller"),
        }
    }
}

pub(crate) fn meet_unchecked(e: &Element, f: &Element) -> Element {
    match (e, f) {
        (Element::Fin(a), Element::Fin(b)) => Element::Fin(a & b),
        (Element::Fincof(a), Element::Fincof(b)) => Element::Fincof(a.meet(b)),
        (Element::Ord(a), Element::Ord(b)) => Element::Ord(a.intersection(b)),
        (Element::Rat(a), Element::Rat(b)) => Element::Rat(a.intersection(b)),
        (Element::Pair(a, b), Element::Pair(c, d)) => {
            Element::pair(meet_unchecked(a, c), meet_unchecked(b, d))
        }
        _ => unreachable!("checked by caller"),
    }
}

pub(crate) fn join_unchecked(e: &Element, f: &Element) -> Element {
    match (e, f) {
        (Element::Fin(a), Element::Fin(b)) => Element::Fin(a | b),
        (Element::Fincof(a), Element::Fincof(b)) => Element::Fincof(a.join(b)),
        (Element::Ord(a), Element::Ord(b)) => Element::Ord(a.union(b)),
        (Element::Rat(a), Element::Rat(b)) => Element::Rat(a.union(b)),
        (Element::Pair(a, b), Element::Pair(c, d)) => {
            Element::pair(join_unchecked(a, c), join_unchecked(b, d))
        }
        _ => unreachable!("checked by caller"),
    }
}

pub(crate) fn finset_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for BoolAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolAlg::FinSet(n) => write!(f, "finset:{n}"),
            BoolAlg::Fincof => f.write_str("fincof"),
            BoolAlg::OrdInt(l) => write!(f, "ordint:{l}"),
            BoolAlg::RatInt => f.write_str("ratint"),
            BoolAlg::Product(l, r) => write!(f, "prod({l},{r})"),
            BoolAlg::LoewyQuotient(b, a) => write!(f, "quot({b},{a})"),
        }
    }
}

fn write_intervals<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[(T, T)]) -> fmt::Result {
    if v.is_empty() {
        return f.write_str("0");
    }
    for (i, (a, b)) in v.iter().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        write!(f, "[{a},{b})")?;
    }
    Ok(())
}

fn write_set<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    it: impl Iterator<Item = T>,
) -> fmt::Result {
    let parts: Vec<String> = it.map(|x| x.to_string()).collect();
    write!(f, "{{{}}}", parts.join(","))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Fin(m) => write_set(f, (0..64).filter(|i| m >> i & 1 == 1)),
            Element::Fincof(x) => {
                f.write_str(if x.cofinite { "cofin" } else { "fin" })?;
                write_set(f, x.exceptions.iter())
            }
            Element::Ord(s) => write_intervals(f, s.intervals()),
            Element::Rat(s) => write_intervals(f, s.intervals()),
            Element::Pair(l, r) => write!(f, "({l},{r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> BoolAlg {
        parse_descriptor(s).unwrap()
    }

    fn el(a: &BoolAlg, s: &str) -> Element {
        parse_element(a, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = alg("ordint:w^2");
        assert_eq!(
            a.meet(&el(&a, "[0,w)"), &el(&a, "[3,w*2)")).unwrap(),
            el(&a, "[3,w)")
        );
        let r = alg("ratint");
        assert_eq!(r.complement(&el(&r, "[0,1/2)")).unwrap(), el(&r, "[1/2,1)"));
        let f = alg("finset:3");
        assert_eq!(f.join(&el(&f, "{0}"), &el(&f, "{2}")).unwrap(), el(&f, "{0,2}"));
    }

    #[test]
    fn mismatch_is_an_error() {
        let f = alg("finset:3");
        let r = alg("ratint");
        assert!(matches!(
            f.meet(&f.one(), &r.one()),
            Err(AlgebraError::AlgebraMismatch { .. })
        ));
        assert!(!f.contains(&Element::Fin(0b1000)));
    }

    #[test]
    fn fincof_ops() {
        let a = BoolAlg::Fincof;
        let x = el(&a, "cofin{0}");
        let y = el(&a, "fin{0,1,4}");
        assert_eq!(a.meet(&x, &y).unwrap(), el(&a, "fin{1,4}"));
        assert_eq!(a.join(&x, &y).unwrap(), a.one());
        assert_eq!(a.sym_diff(&x, &y).unwrap(), el(&a, "cofin{1,4}"));
    }

    #[test]
    fn trivial_algebras() {
        assert!(BoolAlg::FinSet(0).is_trivial());
        assert!(alg("ordint:0").is_trivial());
        assert!(!BoolAlg::RatInt.is_trivial());
        assert_eq!(BoolAlg::FinSet(0).zero(), BoolAlg::FinSet(0).one());
    }

    mod laws {
        use super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        const CATALOGUE: [&str; 7] = [
            "finset:5",
            "fincof",
            "ordint:w^2*2+w+3",
            "ordint:w^3",
            "ratint",
            "prod(finset:2,ratint)",
            "prod(ordint:w,fincof)",
        ];

        fn triple(which: usize, seed: u64) -> (BoolAlg, Element, Element, Element) {
            let a = parse_descriptor(CATALOGUE[which]).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_element(&a, &mut rng);
            let y = random_element(&a, &mut rng);
            let z = random_element(&a, &mut rng);
            (a, x, y, z)
        }

        proptest! {
            #[test]
            fn boolean_algebra_axioms(which in 0..CATALOGUE.len(), seed in any::<u64>()) {
                let (a, x, y, z) = triple(which, seed);
                let m = |p: &Element, q: &Element| a.meet(p, q).unwrap();
                let j = |p: &Element, q: &Element| a.join(p, q).unwrap();
                let c = |p: &Element| a.complement(p).unwrap();
                prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
                prop_assert_eq!(j(&j(&x, &y), &z), j(&x, &j(&y, &z)));
                prop_assert_eq!(m(&x, &j(&y, &z)), j(&m(&x, &y), &m(&x, &z)));
                prop_assert_eq!(c(&j(&x, &y)), m(&c(&x), &c(&y)));
                prop_assert_eq!(m(&x, &x), x.clone());
                prop_assert_eq!(m(&x, &c(&x)), a.zero());
                prop_assert_eq!(j(&x, &c(&x)), a.one());
                prop_assert_eq!(c(&c(&x)), x.clone());
                // ring addition is symmetric difference; x + x = 0
                prop_assert!(a.sym_diff(&x, &x).unwrap().is_zero());
                prop_assert!(a.contains(&m(&x, &y)) && a.contains(&j(&x, &y)));
            }

            #[test]
            fn parse_print_roundtrip(which in 0..CATALOGUE.len(), seed in any::<u64>()) {
                let (a, x, _, _) = triple(which, seed);
                prop_assert_eq!(parse_element(&a, &x.to_string()).unwrap(), x);
            }
        }
    }
}
