//! Loewy series `0 = s_0 ⊆ s_1 ⊆ …` of the catalogued Boolean rings, where
//! `s_1` is the socle (the ideal generated by the atoms) and
//! `s_{α+1} / s_α` is the socle of `A / s_α`.
//!
//! Closed forms:
//!
//! * `FinSet(n)`: `s_1` is everything.
//! * `Fincof`: `s_1` = finite sets, `A / s_1 ≅ FinSet(1)`, `s_2` = everything.
//! * `OrdInt(λ)`: for finite `k`, `e ∈ s_k` iff no interval `[a, b)` of `e`
//!   has a nonzero multiple of `ω^k` in `(a, b]`; equivalently
//!   `b < ω^k·(⌊a/ω^k⌋ + 1)`. The quotient is `OrdInt(⌊λ/ω^k⌋)` and the
//!   quotient map divides both endpoints by `ω^k` on the left, rounding
//!   down. For `k ≥ ω` everything is in `s_k`.
//! * `RatInt`: atomless, so `s_α = 0` for every `α`.
//! * products are componentwise.

use serde::Serialize;

use super::{AlgebraError, BoolAlg, Element, IntervalSet};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoewyProfile {
    /// Least `σ` with `s_σ = s_{σ+1}`.
    pub stabilization: Ordinal,
    /// Whether `s_σ` is the whole ring (semi-artinian).
    pub reaches_unit: bool,
}

fn ordinal_index(alpha: &Ordinal) -> Option<u32> {
    alpha.as_nat().map(|k| u32::try_from(k).unwrap_or(u32::MAX))
}

/// Least nonzero multiple `ω^k·(⌊a/ω^k⌋ + 1)` of `ω^k` above `a`.
pub(crate) fn next_multiple(a: &Ordinal, k: u32) -> Ordinal {
    a.div_rem_omega_pow(k).0.succ().mul_omega_pow(k)
}

pub fn in_loewy_ideal(alg: &BoolAlg, e: &Element, alpha: &Ordinal) -> Result<bool, AlgebraError> {
    if let BoolAlg::LoewyQuotient(..) = alg {
        return in_loewy_ideal(&alg.normalized(), e, alpha);
    }
    alg.check(e)?;
    if alpha.is_zero() {
        return Ok(e.is_zero());
    }
    let k = ordinal_index(alpha);
    Ok(match (alg, e) {
        (BoolAlg::FinSet(_), _) => true,
        (BoolAlg::Fincof, Element::Fincof(f)) => k != Some(1) || !f.cofinite,
        (BoolAlg::OrdInt(_), Element::Ord(s)) => match k {
            None => true,
            Some(k) => s
                .intervals()
                .iter()
                .all(|(a, b)| *b < next_multiple(a, k)),
        },
        (BoolAlg::RatInt, _) => e.is_zero(),
        (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
            in_loewy_ideal(a, l, alpha)? && in_loewy_ideal(b, r, alpha)?
        }
        _ => unreachable!("membership checked above"),
    })
}

pub fn loewy_profile(alg: &BoolAlg) -> LoewyProfile {
    let (sigma, reaches_unit) = match alg {
        BoolAlg::LoewyQuotient(..) => return loewy_profile(&alg.normalized()),
        BoolAlg::FinSet(0) => (0, true),
        BoolAlg::FinSet(_) => (1, true),
        BoolAlg::Fincof => (2, true),
        BoolAlg::OrdInt(l) => match l.leading_exponent() {
            None => (0, true),
            Some(e) => (u64::from(e) + 1, true),
        },
        BoolAlg::RatInt => (0, false),
        BoolAlg::Product(a, b) => {
            let (pa, pb) = (loewy_profile(a), loewy_profile(b));
            return LoewyProfile {
                stabilization: pa.stabilization.max(pb.stabilization),
                reaches_unit: pa.reaches_unit && pb.reaches_unit,
            };
        }
    };
    LoewyProfile {
        stabilization: Ordinal::nat(sigma),
        reaches_unit,
    }
}

/// Normalized descriptor of `A / s_α A`. The zero ring is `FinSet(0)`.
pub fn quotient_by_loewy(alg: &BoolAlg, alpha: &Ordinal) -> BoolAlg {
    if alpha.is_zero() {
        return alg.normalized();
    }
    let k = ordinal_index(alpha);
    match alg {
        BoolAlg::LoewyQuotient(..) => quotient_by_loewy(&alg.normalized(), alpha),
        BoolAlg::FinSet(_) => BoolAlg::FinSet(0),
        BoolAlg::Fincof if k == Some(1) => BoolAlg::FinSet(1),
        BoolAlg::Fincof => BoolAlg::FinSet(0),
        BoolAlg::OrdInt(l) => match k {
            Some(k) => {
                let q = l.div_rem_omega_pow(k).0;
                if q.is_zero() {
                    BoolAlg::FinSet(0)
                } else {
                    BoolAlg::OrdInt(q)
                }
            }
            None => BoolAlg::FinSet(0),
        },
        BoolAlg::RatInt => BoolAlg::RatInt,
        BoolAlg::Product(a, b) => {
            let (qa, qb) = (quotient_by_loewy(a, alpha), quotient_by_loewy(b, alpha));
            if qa.is_trivial() {
                qb
            } else if qb.is_trivial() {
                qa
            } else {
                BoolAlg::product(qa, qb)
            }
        }
    }
}

/// Image of `e` under `A → A / s_α A`, in the normal form of
/// [`quotient_by_loewy`].
pub fn quotient_map(alg: &BoolAlg, alpha: &Ordinal, e: &Element) -> Result<Element, AlgebraError> {
    if let BoolAlg::LoewyQuotient(..) = alg {
        return quotient_map(&alg.normalized(), alpha, e);
    }
    alg.check(e)?;
    if alpha.is_zero() {
        return Ok(e.clone());
    }
    let k = ordinal_index(alpha);
    let target = quotient_by_loewy(alg, alpha);
    if target.is_trivial() && !matches!(alg, BoolAlg::Product(..)) {
        return Ok(target.zero());
    }
    Ok(match (alg, e) {
        (BoolAlg::Fincof, Element::Fincof(f)) => Element::Fin(u64::from(f.cofinite)),
        (BoolAlg::OrdInt(_), Element::Ord(s)) => {
            let k = k.expect("infinite index gives the zero ring");
            Element::Ord(IntervalSet::from_intervals(
                s.intervals()
                    .iter()
                    .map(|(a, b)| (a.div_rem_omega_pow(k).0, b.div_rem_omega_pow(k).0))
                    .collect(),
            ))
        }
        (BoolAlg::RatInt, _) => e.clone(),
        (BoolAlg::Product(a, b), Element::Pair(l, r)) => {
            let (qa, qb) = (quotient_by_loewy(a, alpha), quotient_by_loewy(b, alpha));
            let (ml, mr) = (quotient_map(a, alpha, l)?, quotient_map(b, alpha, r)?);
            if qa.is_trivial() {
                mr
            } else if qb.is_trivial() {
                ml
            } else {
                Element::pair(ml, mr)
            }
        }
        _ => unreachable!("trivial quotients handled above"),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{parse_descriptor, parse_element, random_element};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(s: &str) -> BoolAlg {
        parse_descriptor(s).unwrap()
    }

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn socle_examples() {
        let a = alg("ordint:w^2");
        let one = Ordinal::one();
        assert!(in_loewy_ideal(&a, &parse_element(&a, "[w,w+3)").unwrap(), &one).unwrap());
        assert!(!in_loewy_ideal(&a, &parse_element(&a, "[0,w)").unwrap(), &one).unwrap());
        assert!(in_loewy_ideal(&a, &parse_element(&a, "[0,w)").unwrap(), &ord("2")).unwrap());
        let r = BoolAlg::RatInt;
        let e = parse_element(&r, "[0,1/2)").unwrap();
        for k in 0..5 {
            assert!(!in_loewy_ideal(&r, &e, &Ordinal::nat(k)).unwrap());
        }
    }

    #[test]
    fn profiles() {
        let p = loewy_profile(&BoolAlg::Fincof);
        assert_eq!((p.stabilization, p.reaches_unit), (ord("2"), true));
        let p = loewy_profile(&BoolAlg::RatInt);
        assert_eq!((p.stabilization, p.reaches_unit), (ord("0"), false));
        let p = loewy_profile(&alg("prod(finset:3,ratint)"));
        assert_eq!((p.stabilization, p.reaches_unit), (ord("1"), false));
        let p = loewy_profile(&alg("ordint:w^2*2+w"));
        assert_eq!((p.stabilization, p.reaches_unit), (ord("3"), true));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_by_loewy(&alg("ordint:w^2*2"), &ord("1")), alg("ordint:w*2"));
        assert_eq!(quotient_by_loewy(&alg("prod(finset:2,ratint)"), &ord("1")), BoolAlg::RatInt);
        assert_eq!(quotient_by_loewy(&BoolAlg::Fincof, &ord("1")), BoolAlg::FinSet(1));
        assert_eq!(quotient_by_loewy(&alg("ordint:w*2+3"), &ord("1")), alg("ordint:2"));
        assert_eq!(quotient_by_loewy(&alg("ordint:5"), &ord("1")), BoolAlg::FinSet(0));
        let a = alg("ordint:w^3");
        assert_eq!(quotient_by_loewy(&a, &ord("0")), a);
        let a = alg("ordint:w*2+3");
        let e = parse_element(&a, "[w,w+3)").unwrap();
        assert!(quotient_map(&a, &ord("1"), &e).unwrap().is_zero());
    }

    /// The quotient map is a Boolean homomorphism with kernel `s_α`.
    #[test]
    fn quotient_map_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in [
            "finset:4",
            "fincof",
            "ordint:w^2*2+w+1",
            "ordint:w^3+2",
            "ratint",
            "prod(fincof,ordint:w^2)",
            "prod(finset:2,ratint)",
        ] {
            let a = alg(d);
            for k in 0..4 {
                let alpha = Ordinal::nat(k);
                let qa = quotient_by_loewy(&a, &alpha);
                for _ in 0..60 {
                    let e = random_element(&a, &mut rng);
                    let f = random_element(&a, &mut rng);
                    let qe = quotient_map(&a, &alpha, &e).unwrap();
                    let qf = quotient_map(&a, &alpha, &f).unwrap();
                    assert!(qa.contains(&qe), "{d} {k} {e}");
                    assert_eq!(
                        quotient_map(&a, &alpha, &a.meet(&e, &f).unwrap()).unwrap(),
                        qa.meet(&qe, &qf).unwrap()
                    );
                    assert_eq!(
                        quotient_map(&a, &alpha, &a.complement(&e).unwrap()).unwrap(),
                        qa.complement(&qe).unwrap()
                    );
                    assert_eq!(qe.is_zero(), in_loewy_ideal(&a, &e, &alpha).unwrap(), "{d} {k} {e}");
                }
            }
        }
    }

    #[test]
    fn loewy_monotone_and_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in ["ordint:w^3*2+w", "fincof", "prod(ordint:w^2,ratint)", "finset:5"] {
            let a = alg(d);
            let sigma = loewy_profile(&a).stabilization;
            for _ in 0..100 {
                let e = random_element(&a, &mut rng);
                let mut prev = false;
                for k in 0..6 {
                    let m = in_loewy_ideal(&a, &e, &Ordinal::nat(k)).unwrap();
                    assert!(!prev || m);
                    prev = m;
                }
                assert_eq!(
                    in_loewy_ideal(&a, &e, &sigma).unwrap(),
                    in_loewy_ideal(&a, &e, &sigma.succ()).unwrap()
                );
            }
        }
    }
}
