//! Points of the Stone dual `Spec(A)` of the catalogued Boolean rings and
//! the Loewy / Cantor-Bendixson correspondence `Spec(A / s_α A) ≅ δ^α Spec(A)`.
//!
//! Prime conventions:
//!
//! * `FinSet(n)`: `prime@i` is the ideal of sets omitting `i`.
//! * `Fincof`: `prime@n` omits `n`; `prime@inf` is the ideal of finite sets.
//! * `OrdInt(λ)`: `prime@β` for `0 < β ≤ λ` is the ideal of elements
//!   containing no left neighbourhood `[a, β)` of `β`. For `β = γ + 1` this
//!   is "omits `γ`".
//! * `RatInt`: `prime@q` for rational `0 < q ≤ 1`, same rule. These are a
//!   representable sample of an uncountable space.
//! * products: `left(p)` / `right(p)`.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::boolring::{
    atoms_profile, in_loewy_ideal, is_atom, loewy_profile, quotient_by_loewy, quotient_map,
    AlgebraError, AtomsBelow, BoolAlg, Element, Fincof, IntervalSet,
};
use crate::ordinal::Ordinal;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeRep {
    FinSetPrime(u32),
    FincofPrincipal(u64),
    FincofAtInfinity,
    OrdIntPrime(Ordinal),
    RatIntPrime(Rational64),
    ProductPrime(Side, Box<PrimeRep>),
}

impl PrimeRep {
    pub fn left(p: PrimeRep) -> Self {
        PrimeRep::ProductPrime(Side::Left, Box::new(p))
    }

    pub fn right(p: PrimeRep) -> Self {
        PrimeRep::ProductPrime(Side::Right, Box::new(p))
    }

    fn on(side: Side, p: PrimeRep) -> Self {
        PrimeRep::ProductPrime(side, Box::new(p))
    }
}

impl fmt::Display for PrimeRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeRep::FinSetPrime(i) => write!(f, "prime@{i}"),
            PrimeRep::FincofPrincipal(n) => write!(f, "prime@{n}"),
            PrimeRep::FincofAtInfinity => f.write_str("prime@inf"),
            PrimeRep::OrdIntPrime(b) => write!(f, "prime@{b}"),
            PrimeRep::RatIntPrime(q) => write!(f, "prime@{q}"),
            PrimeRep::ProductPrime(Side::Left, p) => write!(f, "left({p})"),
            PrimeRep::ProductPrime(Side::Right, p) => write!(f, "right({p})"),
        }
    }
}

fn perr(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

fn mismatch(alg: &BoolAlg, p: &PrimeRep) -> AlgebraError {
    AlgebraError::AlgebraMismatch {
        algebra: alg.to_string(),
        element: p.to_string(),
    }
}

pub fn parse_prime(alg: &BoolAlg, text: &str) -> Result<PrimeRep, AlgebraError> {
    let s = text.trim();
    if let BoolAlg::LoewyQuotient(..) = alg {
        return parse_prime(&alg.normalized(), s);
    }
    let p = if let BoolAlg::Product(a, b) = alg {
        let (side, inner, sub) = if let Some(r) = s.strip_prefix("left(") {
            (Side::Left, r, a)
        } else if let Some(r) = s.strip_prefix("right(") {
            (Side::Right, r, b)
        } else {
            return Err(perr(format!("expected `left(…)` or `right(…)`, got `{s}`")));
        };
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| perr(format!("missing `)` in `{s}`")))?;
        PrimeRep::on(side, parse_prime(sub, inner)?)
    } else {
        let v = s
            .strip_prefix("prime@")
            .ok_or_else(|| perr(format!("expected `prime@…`, got `{s}`")))?
            .trim();
        match alg {
            BoolAlg::FinSet(_) => {
                PrimeRep::FinSetPrime(v.parse().map_err(|_| perr(format!("bad index `{v}`")))?)
            }
            BoolAlg::Fincof if v == "inf" => PrimeRep::FincofAtInfinity,
            BoolAlg::Fincof => {
                PrimeRep::FincofPrincipal(v.parse().map_err(|_| perr(format!("bad index `{v}`")))?)
            }
            BoolAlg::OrdInt(_) => {
                PrimeRep::OrdIntPrime(v.parse().map_err(|e| perr(format!("{e}")))?)
            }
            BoolAlg::RatInt => {
                PrimeRep::RatIntPrime(v.parse().map_err(|_| perr(format!("bad cut `{v}`")))?)
            }
            _ => unreachable!(),
        }
    };
    if !is_prime_of(alg, &p) {
        return Err(mismatch(alg, &p));
    }
    Ok(p)
}

/// Whether `p` names a point of `Spec(alg)`.
pub fn is_prime_of(alg: &BoolAlg, p: &PrimeRep) -> bool {
    match (alg, p) {
        (BoolAlg::LoewyQuotient(..), p) => is_prime_of(&alg.normalized(), p),
        (BoolAlg::FinSet(n), PrimeRep::FinSetPrime(i)) => i < n,
        (BoolAlg::Fincof, PrimeRep::FincofPrincipal(_) | PrimeRep::FincofAtInfinity) => true,
        (BoolAlg::OrdInt(l), PrimeRep::OrdIntPrime(b)) => !b.is_zero() && b <= l,
        (BoolAlg::RatInt, PrimeRep::RatIntPrime(q)) => {
            *q > Rational64::from_integer(0) && *q <= Rational64::from_integer(1)
        }
        (BoolAlg::Product(a, _), PrimeRep::ProductPrime(Side::Left, p)) => is_prime_of(a, p),
        (BoolAlg::Product(_, b), PrimeRep::ProductPrime(Side::Right, p)) => is_prime_of(b, p),
        _ => false,
    }
}

fn check_prime(alg: &BoolAlg, p: &PrimeRep) -> Result<(), AlgebraError> {
    if is_prime_of(alg, p) {
        Ok(())
    } else {
        Err(mismatch(alg, p))
    }
}

/// `e ∈ p`.
pub fn prime_membership(alg: &BoolAlg, e: &Element, p: &PrimeRep) -> Result<bool, AlgebraError> {
    let alg = &alg.normalized();
    alg.check(e)?;
    check_prime(alg, p)?;
    Ok(member(e, p))
}

fn member(e: &Element, p: &PrimeRep) -> bool {
    match (e, p) {
        (Element::Fin(m), PrimeRep::FinSetPrime(i)) => m >> i & 1 == 0,
        (Element::Fincof(f), PrimeRep::FincofPrincipal(n)) => !f.contains(*n),
        (Element::Fincof(f), PrimeRep::FincofAtInfinity) => !f.cofinite,
        (Element::Ord(s), PrimeRep::OrdIntPrime(b)) => !s.has_left_nbhd(b),
        (Element::Rat(s), PrimeRep::RatIntPrime(q)) => !s.has_left_nbhd(q),
        (Element::Pair(l, _), PrimeRep::ProductPrime(Side::Left, p)) => member(l, p),
        (Element::Pair(_, r), PrimeRep::ProductPrime(Side::Right, p)) => member(r, p),
        _ => unreachable!("checked by caller"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CbRank {
    Finite(u64),
    Perfect,
}

impl CbRank {
    /// `p ∈ δ^α Spec`.
    pub fn at_least(self, alpha: &Ordinal) -> bool {
        match (self, alpha.as_nat()) {
            (CbRank::Perfect, _) => true,
            (CbRank::Finite(r), Some(a)) => r >= a,
            (CbRank::Finite(_), None) => false,
        }
    }
}

impl fmt::Display for CbRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CbRank::Finite(r) => write!(f, "{r}"),
            CbRank::Perfect => f.write_str("perfect"),
        }
    }
}

pub fn cb_rank_of_prime(alg: &BoolAlg, p: &PrimeRep) -> Result<CbRank, AlgebraError> {
    let alg = &alg.normalized();
    check_prime(alg, p)?;
    Ok(rank(p))
}

fn rank(p: &PrimeRep) -> CbRank {
    match p {
        PrimeRep::FinSetPrime(_) | PrimeRep::FincofPrincipal(_) => CbRank::Finite(0),
        PrimeRep::FincofAtInfinity => CbRank::Finite(1),
        PrimeRep::OrdIntPrime(b) => CbRank::Finite(u64::from(b.least_exponent().unwrap_or(0))),
        PrimeRep::RatIntPrime(_) => CbRank::Perfect,
        PrimeRep::ProductPrime(_, p) => rank(p),
    }
}

/// Atom `e` ↦ the prime `(1 - e)`, the unique prime outside which `e` lies.
pub fn atom_to_prime(alg: &BoolAlg, e: &Element) -> Result<PrimeRep, AlgebraError> {
    let alg = &alg.normalized();
    if !is_atom(alg, e)? {
        return Err(AlgebraError::NotAtom(e.to_string()));
    }
    Ok(atom_prime(alg, e))
}

fn atom_prime(alg: &BoolAlg, e: &Element) -> PrimeRep {
    match (alg, e) {
        (BoolAlg::FinSet(_), Element::Fin(m)) => PrimeRep::FinSetPrime(m.trailing_zeros()),
        (BoolAlg::Fincof, Element::Fincof(f)) => {
            PrimeRep::FincofPrincipal(*f.exceptions.first().expect("atom"))
        }
        (BoolAlg::OrdInt(_), Element::Ord(s)) => PrimeRep::OrdIntPrime(s.intervals()[0].1.clone()),
        (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
            if l.is_zero() {
                PrimeRep::right(atom_prime(b, r))
            } else {
                PrimeRep::left(atom_prime(a, l))
            }
        }
        _ => unreachable!("atoms only"),
    }
}

/// Isolated prime ↦ its atom.
pub fn prime_to_atom(alg: &BoolAlg, p: &PrimeRep) -> Result<Element, AlgebraError> {
    let alg = &alg.normalized();
    check_prime(alg, p)?;
    if rank(p) != CbRank::Finite(0) {
        return Err(AlgebraError::NotIsolated(p.to_string()));
    }
    Ok(prime_atom(alg, p))
}

fn prime_atom(alg: &BoolAlg, p: &PrimeRep) -> Element {
    match (alg, p) {
        (BoolAlg::FinSet(_), PrimeRep::FinSetPrime(i)) => Element::Fin(1 << i),
        (BoolAlg::Fincof, PrimeRep::FincofPrincipal(n)) => Element::Fincof(Fincof::finite([*n])),
        (BoolAlg::OrdInt(_), PrimeRep::OrdIntPrime(b)) => {
            let g = b.drop_last_unit().expect("successor");
            Element::Ord(IntervalSet::interval(g, b.clone()))
        }
        (BoolAlg::Product(a, b), PrimeRep::ProductPrime(side, p)) => match side {
            Side::Left => Element::pair(prime_atom(a, p), b.zero()),
            Side::Right => Element::pair(a.zero(), prime_atom(b, p)),
        },
        _ => unreachable!("isolated primes only"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomOrPrime {
    Atom(Element),
    Prime(PrimeRep),
}

/// Atoms ↔ isolated points of `Spec(A)`.
pub fn atom_isolated_bijection(alg: &BoolAlg, x: &AtomOrPrime) -> Result<AtomOrPrime, AlgebraError> {
    match x {
        AtomOrPrime::Atom(e) => atom_to_prime(alg, e).map(AtomOrPrime::Prime),
        AtomOrPrime::Prime(p) => prime_to_atom(alg, p).map(AtomOrPrime::Atom),
    }
}

fn quotient_sides(a: &BoolAlg, b: &BoolAlg, alpha: &Ordinal) -> (bool, bool) {
    (
        quotient_by_loewy(a, alpha).is_trivial(),
        quotient_by_loewy(b, alpha).is_trivial(),
    )
}

/// The point of `Spec(A / s_α A)` corresponding to `p`, when `s_α ⊆ p`.
pub fn prime_in_quotient(
    alg: &BoolAlg,
    alpha: &Ordinal,
    p: &PrimeRep,
) -> Result<Option<PrimeRep>, AlgebraError> {
    let alg = &alg.normalized();
    check_prime(alg, p)?;
    Ok(in_quotient(alg, alpha, p))
}

fn in_quotient(alg: &BoolAlg, alpha: &Ordinal, p: &PrimeRep) -> Option<PrimeRep> {
    if alpha.is_zero() {
        return Some(p.clone());
    }
    let k = alpha.as_nat();
    match (alg, p) {
        (BoolAlg::FinSet(_), _) => None,
        (BoolAlg::Fincof, PrimeRep::FincofAtInfinity) if k == Some(1) => {
            Some(PrimeRep::FinSetPrime(0))
        }
        (BoolAlg::Fincof, _) => None,
        (BoolAlg::OrdInt(_), PrimeRep::OrdIntPrime(b)) => {
            let k = u32::try_from(k?).ok()?;
            b.divisible_by_omega_pow(k)
                .then(|| PrimeRep::OrdIntPrime(b.div_rem_omega_pow(k).0))
        }
        (BoolAlg::RatInt, _) => Some(p.clone()),
        (BoolAlg::Product(a, b), PrimeRep::ProductPrime(side, inner)) => {
            let sub = if *side == Side::Left { a } else { b };
            let q = in_quotient(sub, alpha, inner)?;
            let (ta, tb) = quotient_sides(a, b, alpha);
            Some(if ta || tb { q } else { PrimeRep::on(*side, q) })
        }
        _ => unreachable!("checked by caller"),
    }
}

/// Inverse of [`prime_in_quotient`].
pub fn lift_prime(alg: &BoolAlg, alpha: &Ordinal, q: &PrimeRep) -> Result<PrimeRep, AlgebraError> {
    let alg = &alg.normalized();
    let target = quotient_by_loewy(alg, alpha);
    check_prime(&target, q)?;
    Ok(lift(alg, alpha, q))
}

fn lift(alg: &BoolAlg, alpha: &Ordinal, q: &PrimeRep) -> PrimeRep {
    if alpha.is_zero() {
        return q.clone();
    }
    match (alg, q) {
        (BoolAlg::Fincof, _) => PrimeRep::FincofAtInfinity,
        (BoolAlg::OrdInt(_), PrimeRep::OrdIntPrime(g)) => {
            let k = u32::try_from(alpha.as_nat().expect("finite")).expect("small");
            PrimeRep::OrdIntPrime(g.mul_omega_pow(k))
        }
        (BoolAlg::RatInt, _) => q.clone(),
        (BoolAlg::Product(a, b), q) => match quotient_sides(a, b, alpha) {
            (true, _) => PrimeRep::right(lift(b, alpha, q)),
            (_, true) => PrimeRep::left(lift(a, alpha, q)),
            _ => match q {
                PrimeRep::ProductPrime(Side::Left, p) => PrimeRep::left(lift(a, alpha, p)),
                PrimeRep::ProductPrime(Side::Right, p) => PrimeRep::right(lift(b, alpha, p)),
                _ => unreachable!("checked by caller"),
            },
        },
        _ => unreachable!("checked by caller"),
    }
}

/// An element outside `p` that lies in `s_α` exactly when `s_α ⊄ p`.
/// For `OrdInt` and `β = μ + ω^e` this is `[μ, β)`.
pub fn canonical_neighbourhood(alg: &BoolAlg, p: &PrimeRep) -> Result<Element, AlgebraError> {
    let alg = &alg.normalized();
    check_prime(alg, p)?;
    Ok(nbhd(alg, p))
}

fn nbhd(alg: &BoolAlg, p: &PrimeRep) -> Element {
    match (alg, p) {
        (BoolAlg::FinSet(_), PrimeRep::FinSetPrime(i)) => Element::Fin(1 << i),
        (BoolAlg::Fincof, PrimeRep::FincofPrincipal(n)) => Element::Fincof(Fincof::finite([*n])),
        (BoolAlg::Fincof, PrimeRep::FincofAtInfinity) => alg.one(),
        (BoolAlg::OrdInt(_), PrimeRep::OrdIntPrime(b)) => Element::Ord(IntervalSet::interval(
            b.drop_last_unit().expect("nonzero"),
            b.clone(),
        )),
        (BoolAlg::RatInt, PrimeRep::RatIntPrime(q)) => {
            Element::Rat(IntervalSet::interval(Rational64::from_integer(0), *q))
        }
        (BoolAlg::Product(a, b), PrimeRep::ProductPrime(side, p)) => match side {
            Side::Left => Element::pair(nbhd(a, p), b.zero()),
            Side::Right => Element::pair(a.zero(), nbhd(b, p)),
        },
        _ => unreachable!("checked by caller"),
    }
}

/// `R / (s_α R + Q) ≠ 0`, decided by whether the canonical neighbourhood
/// of `Q` survives in `R / s_α R`.
pub fn tensor_nonzero(alg: &BoolAlg, alpha: &Ordinal, q: &PrimeRep) -> Result<bool, AlgebraError> {
    let n = canonical_neighbourhood(alg, q)?;
    Ok(!in_loewy_ideal(&alg.normalized(), &n, alpha)?)
}

/// A subspace of `Spec(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecDescriptor {
    Empty,
    FullSpec(BoolAlg),
    /// `δ^α Spec(A)`.
    DerivedSpec(BoolAlg, Ordinal),
}

impl SpecDescriptor {
    /// `δ^α Spec(A) = Spec(A / s_α A)`, with the zero ring giving `Empty`.
    pub fn normalized(&self) -> SpecDescriptor {
        match self {
            SpecDescriptor::Empty => SpecDescriptor::Empty,
            SpecDescriptor::FullSpec(a) | SpecDescriptor::DerivedSpec(a, _) => {
                let q = match self {
                    SpecDescriptor::DerivedSpec(_, alpha) => quotient_by_loewy(a, alpha),
                    _ => a.normalized(),
                };
                if q.is_trivial() {
                    SpecDescriptor::Empty
                } else {
                    SpecDescriptor::FullSpec(q)
                }
            }
        }
    }

    /// Underlying algebra of the normalized form; `None` when empty.
    pub fn algebra(&self) -> Option<BoolAlg> {
        match self.normalized() {
            SpecDescriptor::FullSpec(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for SpecDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecDescriptor::Empty => f.write_str("empty"),
            SpecDescriptor::FullSpec(a) => write!(f, "Spec({a})"),
            SpecDescriptor::DerivedSpec(a, alpha) => write!(f, "δ^{alpha} Spec({a})"),
        }
    }
}

/// Probe primes for the given samples: every prime at which some sample's
/// membership can change, plus a grid.
pub fn probe_primes(alg: &BoolAlg, samples: &[Element]) -> Vec<PrimeRep> {
    let alg = alg.normalized();
    let mut v = probes(&alg, &samples.iter().collect::<Vec<_>>());
    v.sort();
    v.dedup();
    v
}

fn probes(alg: &BoolAlg, samples: &[&Element]) -> Vec<PrimeRep> {
    match alg {
        BoolAlg::FinSet(n) => (0..*n).map(PrimeRep::FinSetPrime).collect(),
        BoolAlg::Fincof => {
            let top = samples
                .iter()
                .filter_map(|e| match e {
                    Element::Fincof(f) => f.exceptions.last().copied(),
                    _ => None,
                })
                .max()
                .unwrap_or(0)
                .max(3);
            let mut v: Vec<PrimeRep> = (0..=top + 1).map(PrimeRep::FincofPrincipal).collect();
            v.push(PrimeRep::FincofAtInfinity);
            v
        }
        BoolAlg::OrdInt(l) => {
            let top = l.leading_exponent().unwrap_or(0);
            let mut pts: Vec<Ordinal> = vec![l.clone()];
            for e in samples {
                if let Element::Ord(s) = e {
                    for (a, b) in s.intervals() {
                        for j in 0..=top {
                            pts.push(crate::boolring::next_multiple(a, j));
                        }
                        pts.push(b.clone());
                        pts.push(b.succ());
                    }
                }
            }
            for j in 0..=top {
                for m in 1..=8 {
                    pts.push(Ordinal::monomial(j, m));
                }
                pts.push(l.div_rem_omega_pow(j).0.mul_omega_pow(j));
            }
            pts.into_iter()
                .filter(|b| !b.is_zero() && b <= l)
                .map(PrimeRep::OrdIntPrime)
                .collect()
        }
        BoolAlg::RatInt => {
            let mut cuts: Vec<Rational64> = (1..=16).map(|k| Rational64::new(k, 16)).collect();
            for e in samples {
                if let Element::Rat(s) = e {
                    for (a, b) in s.intervals() {
                        cuts.push(*a);
                        cuts.push(*b);
                    }
                }
            }
            cuts.into_iter()
                .filter(|q| *q > Rational64::from_integer(0))
                .map(PrimeRep::RatIntPrime)
                .collect()
        }
        BoolAlg::Product(a, b) => {
            let (ls, rs): (Vec<&Element>, Vec<&Element>) = samples
                .iter()
                .filter_map(|e| match e {
                    Element::Pair(l, r) => Some((&**l, &**r)),
                    _ => None,
                })
                .unzip();
            let mut v: Vec<PrimeRep> = probes(a, &ls).into_iter().map(PrimeRep::left).collect();
            v.extend(probes(b, &rs).into_iter().map(PrimeRep::right));
            v
        }
        BoolAlg::LoewyQuotient(..) => probes(&alg.normalized(), samples),
    }
}

fn has_continuum_part(alg: &BoolAlg) -> bool {
    match alg {
        BoolAlg::RatInt => true,
        BoolAlg::Product(a, b) => has_continuum_part(a) || has_continuum_part(b),
        BoolAlg::LoewyQuotient(..) => has_continuum_part(&alg.normalized()),
        _ => false,
    }
}

/// Checks `s_α A = ⋂ {P : P ∈ δ^α Spec(A)}` on the samples, together with
/// the coherence of the identification `Spec(A / s_α A) ≅ δ^α Spec(A)`.
pub fn verify_loewy_spec_correspondence(
    alg: &BoolAlg,
    alpha: &Ordinal,
    samples: &[Element],
) -> Result<Report, AlgebraError> {
    let alg = &alg.normalized();
    for e in samples {
        alg.check(e)?;
    }
    let label = if has_continuum_part(alg) {
        " (representable probes)"
    } else {
        ""
    };
    let probes = probe_primes(alg, samples);
    let quotient = quotient_by_loewy(alg, alpha);
    let mut r = Report::new();

    let mut cx = None;
    let mut derived = Vec::new();
    for p in &probes {
        let q = in_quotient(alg, alpha, p);
        if q.is_some() != rank(p).at_least(alpha) {
            cx.get_or_insert_with(|| format!("{p}: rank {} but quotient image {q:?}", rank(p)));
        }
        if let Some(q) = q {
            if !is_prime_of(&quotient, &q) {
                cx.get_or_insert_with(|| format!("{p} maps to {q}, not a prime of {quotient}"));
            } else if lift(alg, alpha, &q) != *p {
                cx.get_or_insert_with(|| format!("{p} -> {q} lifts back to another prime"));
            } else if let CbRank::Finite(rq) = rank(&q) {
                if let (CbRank::Finite(rp), Some(a)) = (rank(p), alpha.as_nat()) {
                    if rp != rq + a {
                        cx.get_or_insert_with(|| format!("{p}: rank {rp} but image rank {rq}"));
                    }
                }
            }
            derived.push((p.clone(), q));
        }
    }
    r.check(
        "quotient spectrum",
        format!(
            "{} of {} probe primes survive to δ^{alpha}; ranks drop by {alpha}{label}",
            derived.len(),
            probes.len()
        ),
        cx,
    );

    let mut cx = None;
    'outer: for e in samples {
        let qe = quotient_map(alg, alpha, e)?;
        for (p, q) in &derived {
            if member(e, p) != member(&qe, q) {
                cx = Some(format!("{e} vs {p}: membership changes under the quotient map"));
                break 'outer;
            }
        }
    }
    r.check(
        "quotient map compatibility",
        format!("e ∈ P iff image(e) ∈ image(P){label}"),
        cx,
    );

    let mut cx = None;
    let mut in_ideal = 0;
    for e in samples {
        let lhs = in_loewy_ideal(alg, e, alpha)?;
        let rhs = derived.iter().all(|(p, _)| member(e, p));
        in_ideal += usize::from(lhs);
        if lhs != rhs && cx.is_none() {
            let why = derived
                .iter()
                .find(|(p, _)| !member(e, p))
                .map_or("every probe contains it".to_owned(), |(p, _)| format!("{p} excludes it"));
            cx = Some(format!("{e}: in s_{alpha} = {lhs}, {why}"));
        }
    }
    let conv = if derived.is_empty() {
        "; empty family, intersection taken as the unit ideal"
    } else {
        ""
    };
    r.check(
        "ideal equals intersection of primes",
        format!(
            "{} samples ({} in s_{alpha}) against {} primes of δ^{alpha}{label}{conv}",
            samples.len(),
            in_ideal,
            derived.len()
        ),
        cx,
    );
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct SupportResult {
    pub sigma: Ordinal,
    pub support: SpecDescriptor,
    /// The primes `Q` on which the tensor criterion was evaluated.
    pub probes: Vec<PrimeRep>,
    pub report: Report,
}

/// Support of `R / s_σ R`, `σ` the Loewy length: `δ^σ Spec(R)`. The report
/// compares, on probe primes `Q`, the σ-quotient route (`Q` survives in
/// `Spec(R / s_σ R)`) against the tensor criterion `R / (s_σ R + Q) ≠ 0`.
pub fn support_of_loewy_quotient(alg: &BoolAlg, grid: usize) -> SupportResult {
    let alg = &alg.normalized();
    let sigma = loewy_profile(alg).stabilization;
    let support = SpecDescriptor::DerivedSpec(alg.clone(), sigma.clone()).normalized();
    let mut probes = probe_primes(alg, &[]);
    probes.extend(rational_grid(alg, grid));
    probes.sort();
    probes.dedup();
    let mut r = Report::new();
    let mut cx = None;
    let mut inside = 0;
    for q in &probes {
        let by_quotient = in_quotient(alg, &sigma, q).is_some();
        let by_tensor = !in_loewy_ideal(alg, &nbhd(alg, q), &sigma).expect("own element");
        let by_rank = rank(q).at_least(&sigma);
        inside += usize::from(by_tensor);
        if !(by_quotient == by_tensor && by_tensor == by_rank) && cx.is_none() {
            cx = Some(format!(
                "{q}: quotient {by_quotient}, tensor {by_tensor}, rank {by_rank}"
            ));
        }
    }
    let label = if has_continuum_part(alg) {
        " (representable probes)"
    } else {
        ""
    };
    r.check(
        "tensor criterion",
        format!(
            "R/(s_{sigma}+Q) nonzero exactly on δ^{sigma} Spec: {inside} of {} primes Q{label}",
            probes.len()
        ),
        cx,
    );
    SupportResult {
        sigma,
        support,
        probes,
        report: r,
    }
}

/// Cuts `k / n` for `k = 1..=n` on every `RatInt` factor.
fn rational_grid(alg: &BoolAlg, n: usize) -> Vec<PrimeRep> {
    match alg {
        BoolAlg::RatInt => (1..=n as i64)
            .map(|k| PrimeRep::RatIntPrime(Rational64::new(k, n as i64)))
            .collect(),
        BoolAlg::Product(a, b) => {
            let mut v: Vec<PrimeRep> = rational_grid(a, n).into_iter().map(PrimeRep::left).collect();
            v.extend(rational_grid(b, n).into_iter().map(PrimeRep::right));
            v
        }
        _ => Vec::new(),
    }
}

/// Scatteredness of `Spec(A)` computed by repeatedly removing isolated
/// points: pass to `A / s_1 A` while atoms remain.
pub fn spec_is_scattered(alg: &BoolAlg) -> bool {
    let mut a = alg.normalized();
    for _ in 0..=u8::MAX {
        if a.is_trivial() {
            return true;
        }
        if atoms_profile(&a, &a.one()).expect("own unit") == AtomsBelow::NoAtomsBelow {
            return false;
        }
        a = quotient_by_loewy(&a, &Ordinal::one());
    }
    false
}

/// Largest perfect subspace `δ^σ Spec(A)`.
pub fn max_perfect_subset(alg: &BoolAlg) -> SpecDescriptor {
    let sigma = loewy_profile(alg).stabilization;
    SpecDescriptor::DerivedSpec(alg.normalized(), sigma).normalized()
}

/// `δ(P) = P` for `P = max_perfect_subset(alg)`: its algebra has no atoms.
pub fn perfect_subset_is_perfect(alg: &BoolAlg) -> bool {
    match max_perfect_subset(alg).algebra() {
        None => true,
        Some(a) => atoms_profile(&a, &a.one()).expect("own unit") == AtomsBelow::NoAtomsBelow,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolring::{parse_descriptor, parse_element, random_element};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(s: &str) -> BoolAlg {
        parse_descriptor(s).unwrap()
    }

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn bijection_examples() {
        let f = BoolAlg::FinSet(3);
        assert_eq!(atom_to_prime(&f, &Element::Fin(2)).unwrap(), PrimeRep::FinSetPrime(1));
        let a = alg("ordint:w");
        let e = parse_element(&a, "[2,3)").unwrap();
        let p = atom_to_prime(&a, &e).unwrap();
        assert_eq!(p, PrimeRep::OrdIntPrime(ord("3")));
        assert_eq!(prime_to_atom(&a, &p).unwrap(), e);
        assert_eq!(
            prime_to_atom(&BoolAlg::Fincof, &PrimeRep::FincofAtInfinity),
            Err(AlgebraError::NotIsolated("prime@inf".into()))
        );
        assert!(matches!(
            atom_to_prime(&a, &parse_element(&a, "[2,4)").unwrap()),
            Err(AlgebraError::NotAtom(_))
        ));
    }

    #[test]
    fn membership_examples() {
        let a = alg("ordint:w^2");
        let e = parse_element(&a, "[0,w)").unwrap();
        assert!(!prime_membership(&a, &e, &PrimeRep::OrdIntPrime(ord("w"))).unwrap());
        assert!(prime_membership(&a, &e, &PrimeRep::OrdIntPrime(ord("w*2"))).unwrap());
        let f = BoolAlg::FinSet(2);
        assert!(!prime_membership(&f, &Element::Fin(1), &PrimeRep::FinSetPrime(0)).unwrap());
        assert!(prime_membership(&f, &Element::Fin(1), &PrimeRep::FinSetPrime(1)).unwrap());
        assert!(prime_membership(&a, &a.zero(), &PrimeRep::OrdIntPrime(ord("5"))).unwrap());
    }

    #[test]
    fn rank_examples() {
        let a = alg("ordint:w^2");
        let r = |s: &str| cb_rank_of_prime(&a, &PrimeRep::OrdIntPrime(ord(s))).unwrap();
        assert_eq!(r("w*3"), CbRank::Finite(1));
        assert_eq!(r("w^2"), CbRank::Finite(2));
        assert_eq!(r("w+4"), CbRank::Finite(0));
        assert_eq!(
            cb_rank_of_prime(&BoolAlg::RatInt, &PrimeRep::RatIntPrime(Rational64::new(1, 3)))
                .unwrap(),
            CbRank::Perfect
        );
        assert!(cb_rank_of_prime(&a, &PrimeRep::OrdIntPrime(ord("w^2+1"))).is_err());
    }

    #[test]
    fn prime_literals() {
        for (d, p) in [
            ("finset:4", "prime@3"),
            ("fincof", "prime@inf"),
            ("fincof", "prime@7"),
            ("ordint:w^2", "prime@w*2"),
            ("ratint", "prime@1/3"),
            ("prod(finset:2,ratint)", "right(prime@1/2)"),
        ] {
            let a = alg(d);
            assert_eq!(parse_prime(&a, p).unwrap().to_string(), p);
        }
        assert!(parse_prime(&BoolAlg::RatInt, "prime@0").is_err());
        assert!(parse_prime(&alg("ordint:w"), "prime@w+1").is_err());
    }

    #[test]
    fn correspondence_examples() {
        let f = BoolAlg::FinSet(3);
        let all: Vec<Element> = (0..8).map(Element::Fin).collect();
        let r = verify_loewy_spec_correspondence(&f, &Ordinal::one(), &all).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.to_string().contains("unit ideal"));

        let a = alg("ordint:w^2");
        let e = parse_element(&a, "[w,w+3)").unwrap();
        assert!(verify_loewy_spec_correspondence(&a, &Ordinal::one(), &[e]).unwrap().passed());

        let r = BoolAlg::RatInt;
        let e = parse_element(&r, "[0,1/2)").unwrap();
        let rep = verify_loewy_spec_correspondence(&r, &Ordinal::one(), &[e]).unwrap();
        assert!(rep.passed());
        assert!(rep.to_string().contains("representable probes"));
    }

    #[test]
    fn correspondence_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [
            "finset:5",
            "fincof",
            "ordint:w^3*2+w^2+3",
            "ratint",
            "prod(finset:2,ratint)",
            "prod(ordint:w^2,fincof)",
        ] {
            let a = alg(d);
            let samples: Vec<Element> = (0..80).map(|_| random_element(&a, &mut rng)).collect();
            for k in 0..5 {
                let rep = verify_loewy_spec_correspondence(&a, &Ordinal::nat(k), &samples).unwrap();
                assert!(rep.passed(), "{d} alpha={k}\n{rep}");
            }
        }
    }

    #[test]
    fn support_examples() {
        let s = support_of_loewy_quotient(&alg("prod(finset:2,ratint)"), 50);
        assert_eq!(s.support, SpecDescriptor::FullSpec(BoolAlg::RatInt));
        assert!(s.report.passed());
        assert_eq!(support_of_loewy_quotient(&BoolAlg::Fincof, 8).support, SpecDescriptor::Empty);
        assert_eq!(
            support_of_loewy_quotient(&BoolAlg::RatInt, 8).support,
            SpecDescriptor::FullSpec(BoolAlg::RatInt)
        );
        assert!(support_of_loewy_quotient(&alg("ordint:w^3*2+w"), 8).report.passed());
    }

    #[test]
    fn scattered_examples() {
        assert!(spec_is_scattered(&alg("ordint:w^3")));
        assert_eq!(max_perfect_subset(&alg("ordint:w^3")), SpecDescriptor::Empty);
        assert!(!spec_is_scattered(&BoolAlg::RatInt));
        assert_eq!(max_perfect_subset(&BoolAlg::RatInt), SpecDescriptor::FullSpec(BoolAlg::RatInt));
        let p = alg("prod(ordint:w,ratint)");
        assert!(!spec_is_scattered(&p));
        assert_eq!(max_perfect_subset(&p), SpecDescriptor::FullSpec(BoolAlg::RatInt));
        assert!(perfect_subset_is_perfect(&p));
    }

    /// Membership in each probe prime is a prime ideal: downward closed,
    /// closed under joins, and `e ∧ f ∈ P` forces `e ∈ P` or `f ∈ P`.
    #[test]
    fn probes_are_prime_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in ["finset:4", "fincof", "ordint:w^2*2+1", "ratint", "prod(fincof,ratint)"] {
            let a = alg(d);
            let samples: Vec<Element> = (0..40).map(|_| random_element(&a, &mut rng)).collect();
            for p in probe_primes(&a, &samples) {
                assert!(!member(&a.one(), &p));
                for e in &samples {
                    let f = random_element(&a, &mut rng);
                    let (me, mf) = (member(e, &p), member(&f, &p));
                    assert_eq!(member(&a.join(e, &f).unwrap(), &p), me && mf);
                    assert_eq!(member(&a.meet(e, &f).unwrap(), &p), me || mf);
                    assert_ne!(member(&a.complement(e).unwrap(), &p), me);
                }
            }
        }
    }

    /// Ranks drop by exactly `α` under `Spec(A / s_α) → δ^α Spec(A)`.
    #[test]
    fn rank_drops_under_quotient() {
        for l in ["w^3*3", "w^3*2+w^2+w+2", "w^2*3+1"] {
            let a = BoolAlg::OrdInt(ord(l));
            let ps = probe_primes(&a, &[]);
            for k in 0..4u64 {
                let alpha = Ordinal::nat(k);
                for p in &ps {
                    let rp = cb_rank_of_prime(&a, p).unwrap();
                    match prime_in_quotient(&a, &alpha, p).unwrap() {
                        Some(q) => {
                            let qa = quotient_by_loewy(&a, &alpha);
                            let CbRank::Finite(rp) = rp else { unreachable!() };
                            assert_eq!(cb_rank_of_prime(&qa, &q).unwrap(), CbRank::Finite(rp - k));
                        }
                        None => assert!(!rp.at_least(&alpha)),
                    }
                }
            }
        }
    }
}
