//! Ordinals below ω^ω in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^e₁·c₁ + … + ω^eₖ·cₖ` with natural
//! exponents `e₁ > … > eₖ` and positive coefficients. The empty sum is `0`.
//! Only the operations needed by the interval algebras and the Loewy / CB
//! indices are provided: comparison, addition, left division by a power of
//! ω, left subtraction and parsing/printing in the `w^2*3+w+1` syntax.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One `ω^exp · coef` summand. Field order matters: the derived `Ord` on a
/// term list is exactly the ordinal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    pub exp: u32,
    pub coef: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ordinal {
    terms: Vec<Term>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("malformed ordinal literal `{0}`")]
    Syntax(String),
    #[error("exponents must be strictly decreasing in `{0}`")]
    NotNormal(String),
}

impl Ordinal {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    pub fn nat(n: u64) -> Self {
        Self::monomial(0, n)
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: u32) -> Self {
        Self::monomial(exp, 1)
    }

    /// `ω^exp · coef`.
    pub fn monomial(exp: u32, coef: u64) -> Self {
        if coef == 0 {
            Self::zero()
        } else {
            Self {
                terms: vec![Term { exp, coef }],
            }
        }
    }

    /// Builds an ordinal from `(exp, coef)` pairs, which must already be in
    /// normal form (zero coefficients are dropped).
    pub fn from_terms(pairs: &[(u32, u64)]) -> Result<Self, OrdinalError> {
        let terms: Vec<Term> = pairs
            .iter()
            .filter(|(_, c)| *c > 0)
            .map(|&(exp, coef)| Term { exp, coef })
            .collect();
        if terms.windows(2).any(|w| w[0].exp <= w[1].exp) {
            return Err(OrdinalError::NotNormal(format!("{pairs:?}")));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Finite value, if the ordinal is a natural number.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [Term { exp: 0, coef }] => Some(*coef),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp == 0)
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp > 0)
    }

    /// Exponent of the last CNF term. For `β > 0` this is the
    /// Cantor-Bendixson rank of `β` in the ordinal space `(0, λ]`.
    pub fn least_exponent(&self) -> Option<u32> {
        self.terms.last().map(|t| t.exp)
    }

    pub fn leading_exponent(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exp)
    }

    /// Coefficient of `ω^exp` (zero if absent).
    pub fn coef_of(&self, exp: u32) -> u64 {
        self.terms
            .iter()
            .find(|t| t.exp == exp)
            .map_or(0, |t| t.coef)
    }

    pub fn succ(&self) -> Self {
        self.add(&Self::one())
    }

    /// Ordinal sum `self + rhs` (not commutative).
    pub fn add(&self, rhs: &Self) -> Self {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .copied()
            .take_while(|t| t.exp > head.exp)
            .collect();
        let mut rest = rhs.terms.iter().copied();
        if let Some(same) = self.terms.iter().find(|t| t.exp == head.exp) {
            let first = rest.next().expect("nonempty");
            terms.push(Term {
                exp: first.exp,
                coef: same.coef + first.coef,
            });
        }
        terms.extend(rest);
        Self { terms }
    }

    /// `ω^exp · self`.
    pub fn mul_omega_pow(&self, exp: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp + exp,
                    coef: t.coef,
                })
                .collect(),
        }
    }

    /// Left division by `ω^exp`: the unique `(q, r)` with
    /// `self = ω^exp · q + r` and `r < ω^exp`.
    pub fn div_rem_omega_pow(&self, exp: u32) -> (Self, Self) {
        let (hi, lo): (Vec<Term>, Vec<Term>) = self.terms.iter().partition(|t| t.exp >= exp);
        let q = Self {
            terms: hi
                .into_iter()
                .map(|t| Term {
                    exp: t.exp - exp,
                    coef: t.coef,
                })
                .collect(),
        };
        (q, Self { terms: lo })
    }

    /// Whether `ω^exp` left-divides `self` (every exponent is `≥ exp`).
    pub fn divisible_by_omega_pow(&self, exp: u32) -> bool {
        self.terms.iter().all(|t| t.exp >= exp)
    }

    /// Left subtraction: the unique `x` with `other + x = self`, when
    /// `other ≤ self`.
    pub fn checked_sub_left(&self, other: &Self) -> Option<Self> {
        if other > self {
            return None;
        }
        for (i, (a, b)) in other.terms.iter().zip(&self.terms).enumerate() {
            if a == b {
                continue;
            }
            // first difference: other's term is smaller
            let mut terms = Vec::new();
            if a.exp == b.exp {
                terms.push(Term {
                    exp: b.exp,
                    coef: b.coef - a.coef,
                });
                terms.extend_from_slice(&self.terms[i + 1..]);
            } else {
                terms.extend_from_slice(&self.terms[i..]);
            }
            return Some(Self { terms });
        }
        // other is a prefix of self
        Some(Self {
            terms: self.terms[other.terms.len()..].to_vec(),
        })
    }

    /// Writes `self = μ + ω^e` with `e` the least exponent; returns `μ`.
    /// Together with `self` this bounds the smallest canonical
    /// left-neighbourhood `[μ, self)`.
    pub fn drop_last_unit(&self) -> Option<Self> {
        let mut terms = self.terms.clone();
        let last = terms.last_mut()?;
        last.coef -= 1;
        if last.coef == 0 {
            terms.pop();
        }
        Some(Self { terms })
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Self::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (t.exp, t.coef) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    /// Accepts `0`, naturals, `w`, `ω`, `w^k`, `w*c`, `w^k*c` joined by `+`.
    /// Terms must appear with strictly decreasing exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace('ω', "w");
        if s.is_empty() {
            return Err(OrdinalError::Syntax(s));
        }
        let mut pairs = Vec::new();
        for part in s.split('+') {
            pairs.push(parse_term(part).ok_or_else(|| OrdinalError::Syntax(s.clone()))?);
        }
        let pairs: Vec<(u32, u64)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        if pairs.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(OrdinalError::NotNormal(s));
        }
        Self::from_terms(&pairs)
    }
}

fn parse_term(part: &str) -> Option<(u32, u64)> {
    let Some(rest) = part.strip_prefix('w') else {
        return part.parse::<u64>().ok().map(|c| (0, c));
    };
    let (exp, rest) = match rest.strip_prefix('^') {
        Some(r) => {
            let end = r.find('*').unwrap_or(r.len());
            (r[..end].parse::<u32>().ok()?, &r[end..])
        }
        None => (1, rest),
    };
    let coef = match rest.strip_prefix('*') {
        Some(c) => c.parse::<u64>().ok()?,
        None if rest.is_empty() => 1,
        None => return None,
    };
    Some((exp, coef))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "3", "w", "w*2", "w^2", "w^2*2+w+3", "w^5*7+w^2"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w^2*2+w*1+3").to_string(), "w^2*2+w+3");
        assert_eq!(o("ω"), Ordinal::omega());
        assert!("w+w^2".parse::<Ordinal>().is_err());
        assert!("w^".parse::<Ordinal>().is_err());
        assert!("".parse::<Ordinal>().is_err());
    }

    #[test]
    fn order_is_cnf_lexicographic() {
        assert!(o("w") > o("1000"));
        assert!(o("w+1") > o("w"));
        assert!(o("w*2") > o("w+5"));
        assert!(o("w^2") > o("w*9+9"));
        assert!(o("0") < o("1"));
    }

    #[test]
    fn addition_absorbs() {
        assert_eq!(o("3").add(&o("w")), o("w"));
        assert_eq!(o("w").add(&o("3")), o("w+3"));
        assert_eq!(o("w+3").add(&o("w")), o("w*2"));
        assert_eq!(o("w^2+w").add(&o("w*2+1")), o("w^2+w*3+1"));
    }

    #[test]
    fn division_by_powers_of_omega() {
        let (q, r) = o("w^2*2+w+3").div_rem_omega_pow(1);
        assert_eq!((q, r), (o("w*2+1"), o("3")));
        assert_eq!(o("w*2").mul_omega_pow(1), o("w^2*2"));
        assert!(o("w^2+w").divisible_by_omega_pow(1));
        assert!(!o("w+1").divisible_by_omega_pow(1));
    }

    #[test]
    fn left_subtraction() {
        assert_eq!(o("w+3").checked_sub_left(&o("w")), Some(o("3")));
        assert_eq!(o("w*2").checked_sub_left(&o("5")), Some(o("w*2")));
        assert_eq!(o("w*3+1").checked_sub_left(&o("w+7")), Some(o("w*2+1")));
        assert_eq!(o("w").checked_sub_left(&o("w+1")), None);
        assert_eq!(o("w").checked_sub_left(&o("w")), Some(o("0")));
    }

    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        proptest::collection::vec(0u64..4, 4).prop_map(|cs| {
            let pairs: Vec<(u32, u64)> = cs
                .iter()
                .enumerate()
                .map(|(i, &c)| ((3 - i) as u32, c))
                .collect();
            Ordinal::from_terms(&pairs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn display_roundtrip(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn sub_left_inverts_add(a in arb_ordinal(), b in arb_ordinal()) {
            let s = a.add(&b);
            prop_assert!(s >= a);
            let x = s.checked_sub_left(&a).unwrap();
            prop_assert_eq!(a.add(&x), s);
        }

        #[test]
        fn add_is_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn div_rem_reconstructs(a in arb_ordinal(), e in 0u32..4) {
            let (q, r) = a.div_rem_omega_pow(e);
            prop_assert!(r < Ordinal::omega_pow(e));
            prop_assert_eq!(q.mul_omega_pow(e).add(&r), a);
        }
    }
}
