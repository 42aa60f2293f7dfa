use num_rational::Rational64;
use rand::Rng;

use super::{finset_mask, BoolAlg, Element, Fincof, IntervalSet};
use crate::ordinal::Ordinal;

/// A random ordinal `≤ λ` that shares a random-length prefix of `λ`'s normal
/// form, so that endpoints land near every block boundary.
pub(crate) fn random_ordinal_upto<R: Rng + ?Sized>(lambda: &Ordinal, rng: &mut R) -> Ordinal {
    let terms = lambda.terms();
    let i = rng.gen_range(0..=terms.len());
    let prefix: Vec<(u32, u64)> = terms[..i].iter().map(|t| (t.exp, t.coef)).collect();
    let mut out = Ordinal::from_terms(&prefix).expect("prefix of a normal form");
    if i == terms.len() {
        return out;
    }
    let t = terms[i];
    let c = rng.gen_range(0..t.coef);
    out = out.add(&Ordinal::monomial(t.exp, c));
    for e in (0..t.exp).rev() {
        out = out.add(&Ordinal::monomial(e, rng.gen_range(0..=3)));
    }
    out
}

fn random_intervals<T: Ord + Clone, R: Rng + ?Sized>(
    rng: &mut R,
    mut point: impl FnMut(&mut R) -> T,
) -> IntervalSet<T> {
    let n = rng.gen_range(0..=4) * 2;
    let mut pts: Vec<T> = (0..n).map(|_| point(rng)).collect();
    pts.sort();
    IntervalSet::from_intervals(
        pts.chunks(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect(),
    )
}

pub fn random_element<R: Rng + ?Sized>(alg: &BoolAlg, rng: &mut R) -> Element {
    match alg {
        BoolAlg::FinSet(n) => Element::Fin(rng.gen::<u64>() & finset_mask(*n)),
        BoolAlg::Fincof => {
            let k = rng.gen_range(0..6);
            Element::Fincof(Fincof {
                cofinite: rng.gen(),
                exceptions: (0..k).map(|_| rng.gen_range(0..12)).collect(),
            })
        }
        BoolAlg::OrdInt(l) => Element::Ord(random_intervals(rng, |r| random_ordinal_upto(l, r))),
        BoolAlg::RatInt => Element::Rat(random_intervals(rng, |r| {
            let d = [1i64, 2, 3, 4, 6, 8, 12, 16][r.gen_range(0..8)];
            Rational64::new(r.gen_range(0..=d), d)
        })),
        BoolAlg::Product(a, b) => Element::pair(random_element(a, rng), random_element(b, rng)),
        BoolAlg::LoewyQuotient(..) => random_element(&alg.normalized(), rng),
    }
}
