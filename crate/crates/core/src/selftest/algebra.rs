use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracle::{ExtAlg, ExtElem, ExtPrime, PREFIX};
use super::Tally;
use crate::boolring::{
    in_loewy_ideal, loewy_profile, quotient_by_loewy, quotient_map, random_element,
    uniformity_refuter, verify_split_tree, BoolAlg, Element, Fincof, IntervalSet,
};
use crate::ordinal::Ordinal;
use crate::report::Report;
use crate::stone::{
    atom_isolated_bijection, atom_to_prime, cb_rank_of_prime, max_perfect_subset,
    perfect_subset_is_perfect, prime_membership, prime_to_atom, Side,
    spec_is_scattered, support_of_loewy_quotient, verify_loewy_spec_correspondence, AtomOrPrime,
    PrimeRep, SpecDescriptor,
};

/// `ω·j + i`.
fn oi(j: u64, i: u64) -> Ordinal {
    Ordinal::monomial(1, j).add(&Ordinal::nat(i))
}

/// Checks the round trip atom → prime → atom, that the atom lies outside
/// exactly one of the `primes`, and that non-isolated primes are refused.
fn bijection_cases(
    tally: &mut Tally,
    alg: &BoolAlg,
    atoms: &[Element],
    primes: &[PrimeRep],
    non_isolated: &[PrimeRep],
) {
    for e in atoms {
        let back = atom_isolated_bijection(alg, &AtomOrPrime::Atom(e.clone())).and_then(|p| {
            let AtomOrPrime::Prime(p) = p else { unreachable!() };
            prime_to_atom(alg, &p).map(|a| (p, a))
        });
        let ok = matches!(&back, Ok((_, a)) if a == e);
        tally.record("atom -> prime -> atom", ok, || format!("{alg} {e}: {back:?}"));
        let Ok((p, _)) = back else { continue };
        let outside: Vec<&PrimeRep> = primes
            .iter()
            .filter(|q| prime_membership(alg, e, q) == Ok(false))
            .collect();
        tally.record(
            "atom lies outside exactly its prime",
            outside == [&p],
            || format!("{alg} {e}: outside {outside:?}, expected {p}"),
        );
        let again = atom_to_prime(alg, &prime_to_atom(alg, &p).expect("isolated"));
        tally.record("prime -> atom -> prime", again.as_ref() == Ok(&p), || {
            format!("{alg} {p}: {again:?}")
        });
    }
    for p in non_isolated {
        tally.record(
            "non-isolated primes have no atom",
            prime_to_atom(alg, p).is_err(),
            || format!("{alg} {p}"),
        );
    }
}

pub(super) fn atom_bijection() -> Report {
    let mut tally = Tally::default();
    for n in 0..=10u32 {
        let alg = BoolAlg::FinSet(n);
        let atoms: Vec<Element> = (0..n).map(|i| Element::Fin(1 << i)).collect();
        let primes: Vec<PrimeRep> = (0..n).map(PrimeRep::FinSetPrime).collect();
        bijection_cases(&mut tally, &alg, &atoms, &primes, &[]);
    }

    let mut lambdas: Vec<Ordinal> = (1..=10).map(Ordinal::nat).collect();
    for k in 1..=9 {
        lambdas.extend((0..=3).map(|m| oi(k, m)));
    }
    lambdas.push(oi(10, 0));
    for l in lambdas {
        let alg = BoolAlg::ordint(l.clone());
        let (k, m) = (l.coef_of(1), l.coef_of(0));
        let mut atoms = Vec::new();
        let mut primes = Vec::new();
        let mut limits = Vec::new();
        for j in 0..=k {
            let top = if j < k { 12 } else { m };
            for i in 0..top {
                atoms.push(Element::Ord(IntervalSet::interval(oi(j, i), oi(j, i + 1))));
            }
            for i in 0..=top {
                let b = oi(j, i);
                if b.is_zero() {
                    continue;
                }
                primes.push(PrimeRep::OrdIntPrime(b.clone()));
                if i == 0 {
                    limits.push(PrimeRep::OrdIntPrime(b));
                }
            }
        }
        bijection_cases(&mut tally, &alg, &atoms, &primes, &limits);
        let not_atom = Element::Ord(IntervalSet::interval(Ordinal::zero(), Ordinal::nat(2)));
        if l >= Ordinal::nat(2) {
            tally.record(
                "non-atoms are refused",
                atom_to_prime(&alg, &not_atom).is_err(),
                || format!("{alg} {not_atom}"),
            );
        }
    }

    let alg = BoolAlg::Fincof;
    let atoms: Vec<Element> = (0..=100).map(|n| Element::Fincof(Fincof::finite([n]))).collect();
    let mut primes: Vec<PrimeRep> = (0..=101).map(PrimeRep::FincofPrincipal).collect();
    primes.push(PrimeRep::FincofAtInfinity);
    bijection_cases(&mut tally, &alg, &atoms, &primes, &[PrimeRep::FincofAtInfinity]);
    tally.into_report()
}

/// `(j, i)` with `o = ω·j + i`.
fn split_ord(o: &Ordinal) -> (u64, u64) {
    debug_assert!(o.leading_exponent().unwrap_or(0) <= 1);
    (o.coef_of(1), o.coef_of(0))
}

fn ext_of_alg(alg: &BoolAlg) -> ExtAlg {
    match alg {
        BoolAlg::OrdInt(l) => {
            let (k, n) = split_ord(l);
            ExtAlg {
                blocks: k as usize,
                points: n as usize,
            }
        }
        BoolAlg::FinSet(n) => ExtAlg {
            blocks: 0,
            points: *n as usize,
        },
        other => panic!("no extensional model for {other}"),
    }
}

/// Reads off the points of an interval element block by block.
fn ext_of_elem(a: ExtAlg, e: &Element) -> ExtElem {
    let mut out = a.zero();
    match e {
        Element::Fin(m) => out.finite = *m,
        Element::Ord(s) => {
            for (lo, hi) in s.intervals() {
                let ((ja, ia), (jb, ib)) = (split_ord(lo), split_ord(hi));
                for j in ja..=jb {
                    let from = if j == ja { ia } else { 0 };
                    let to = (j == jb).then_some(ib);
                    let j = j as usize;
                    if j < a.blocks {
                        let stop = to.unwrap_or(u64::from(PREFIX)).min(u64::from(PREFIX));
                        for i in from..stop {
                            out.prefix[j] |= 1 << i;
                        }
                        assert!(to.is_none_or(|b| b <= u64::from(PREFIX)), "grid too coarse");
                        out.tail[j] |= to.is_none();
                    } else if let Some(to) = to {
                        for i in from..to {
                            out.finite |= 1 << i;
                        }
                    }
                }
            }
        }
        other => panic!("no extensional model for {other}"),
    }
    out
}

fn ext_of_prime(a: ExtAlg, beta: &Ordinal) -> ExtPrime {
    let (j, m) = split_ord(beta);
    if m == 0 {
        ExtPrime::Tail(j as usize - 1)
    } else if (j as usize) < a.blocks {
        ExtPrime::BlockPoint(j as usize, m as u32 - 1)
    } else {
        ExtPrime::Point(m as usize - 1)
    }
}

/// Endpoints used to build test elements for `OrdInt(ω·k + n)`.
fn endpoint_grid(k: u64, n: u64) -> Vec<Ordinal> {
    let lambda = oi(k, n);
    let mut v: Vec<Ordinal> = (0..=2).map(Ordinal::nat).collect();
    for j in [1, k / 2, k.saturating_sub(1), k] {
        v.extend((0..=2).map(|m| oi(j, m)));
    }
    v.push(lambda.clone());
    v.retain(|o| *o <= lambda);
    v.sort();
    v.dedup();
    v
}

/// Every element with at most four intervals whose endpoints lie in `grid`.
fn grid_elements(grid: &[Ordinal]) -> Vec<Element> {
    let g = grid.len();
    let mut out = Vec::new();
    for bits in 0u32..1 << g {
        let c = bits.count_ones();
        if c % 2 == 1 || c > 8 {
            continue;
        }
        let pts: Vec<&Ordinal> = (0..g).filter(|i| bits >> i & 1 == 1).map(|i| &grid[i]).collect();
        let ivs = pts.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
        out.push(Element::Ord(IntervalSet::from_intervals(ivs)));
    }
    out
}

const MAX_BLOCKS: u64 = 20;

pub(super) fn ordint_oracle() -> Report {
    let mut tally = Tally::default();
    let alphas: Vec<(Ordinal, u32)> = vec![
        (Ordinal::zero(), 0),
        (Ordinal::one(), 1),
        (Ordinal::nat(2), 2),
        (Ordinal::nat(3), 3),
        (Ordinal::omega(), 64),
    ];
    let mut lambdas = 0;
    for k in 0..=MAX_BLOCKS {
        for n in 0..=2 {
            if (k == 0 && n == 0) || (k == MAX_BLOCKS && n > 0) {
                continue;
            }
            lambdas += 1;
            let lambda = oi(k, n);
            let alg = BoolAlg::ordint(lambda.clone());
            let ext = ext_of_alg(&alg);
            let elements = grid_elements(&endpoint_grid(k, n));
            let mut primes = Vec::new();
            for j in 0..=k {
                for m in 0..=3 {
                    let b = oi(j, m);
                    if !b.is_zero() && b <= lambda {
                        primes.push(b);
                    }
                }
            }

            for (alpha, a) in &alphas {
                if alpha.is_zero() {
                    continue;
                }
                let q = quotient_by_loewy(&alg, alpha);
                let (qe, _) = ext.quotient(&ext.zero(), *a);
                let ok = ext_of_alg(&q) == qe || (q.is_trivial() && qe.is_trivial());
                tally.record("quotient algebra", ok, || format!("{alg} / s_{alpha} = {q}, oracle {qe:?}"));
            }
            for e in &elements {
                let x = ext_of_elem(ext, e);
                for (alpha, a) in &alphas {
                    let got = in_loewy_ideal(&alg, e, alpha);
                    let want = ext.in_loewy(&x, *a);
                    tally.record("in_loewy_ideal", got == Ok(want), || {
                        format!("{alg} {e} α={alpha}: {got:?}, oracle {want}")
                    });
                    if alpha.is_zero() {
                        continue;
                    }
                    let (qa, qx) = ext.quotient(&x, *a);
                    let img = quotient_map(&alg, alpha, e);
                    let ok = match &img {
                        Ok(y) if qa.is_trivial() => y.is_zero(),
                        Ok(y) => ext_of_elem(qa, y) == qx,
                        Err(_) => false,
                    };
                    tally.record("quotient map", ok, || format!("{alg} {e} α={alpha}: {img:?}"));
                }
                for b in &primes {
                    let p = PrimeRep::OrdIntPrime(b.clone());
                    let got = prime_membership(&alg, e, &p);
                    let want = ext.member(&x, ext_of_prime(ext, b));
                    tally.record("prime membership", got == Ok(want), || {
                        format!("{alg} {e} ∈ {p}: {got:?}, oracle {want}")
                    });
                }
            }
            for b in &primes {
                let p = PrimeRep::OrdIntPrime(b.clone());
                let got = cb_rank_of_prime(&alg, &p).map(|r| r.to_string());
                let want = ext.rank(ext_of_prime(ext, b)).to_string();
                tally.record("cb_rank_of_prime", got.as_ref() == Ok(&want), || {
                    format!("{alg} {p}: {got:?}, oracle {want}")
                });
            }
        }
    }
    let mut r = tally.into_report();
    r.pass("coverage", format!("{lambdas} algebras OrdInt(λ), λ ≤ ω·{MAX_BLOCKS}"));
    r
}

pub(super) fn catalogue() -> Vec<BoolAlg> {
    let mut v: Vec<BoolAlg> = (0..=5).map(BoolAlg::FinSet).collect();
    v.push(BoolAlg::Fincof);
    v.push(BoolAlg::ordint(Ordinal::omega()));
    v.push(BoolAlg::ordint(Ordinal::monomial(2, 2)));
    v.push(BoolAlg::RatInt);
    v.push(BoolAlg::product(BoolAlg::FinSet(2), BoolAlg::RatInt));
    v.push(BoolAlg::product(BoolAlg::ordint(Ordinal::omega()), BoolAlg::RatInt));
    v
}

pub(super) fn scattered_catalogue() -> Report {
    let mut r = Report::new();
    for alg in catalogue() {
        let semi = loewy_profile(&alg).reaches_unit;
        let scattered = spec_is_scattered(&alg);
        r.check(
            format!("{alg}"),
            format!("semi-artinian {semi}, scattered {scattered}"),
            (semi != scattered).then(|| alg.to_string()),
        );
        let core = max_perfect_subset(&alg);
        r.check(
            format!("{alg} perfect part"),
            format!("{core} is perfect and empty iff semi-artinian"),
            (!perfect_subset_is_perfect(&alg) || (core == SpecDescriptor::Empty) != semi)
                .then(|| core.to_string()),
        );
    }
    r
}

const SUPPORT_GRID: usize = 64;
const REFUTER_DEPTH: usize = 6;

pub(super) fn loewy_support() -> Report {
    let alg = BoolAlg::product(BoolAlg::FinSet(2), BoolAlg::RatInt);
    let res = support_of_loewy_quotient(&alg, SUPPORT_GRID);
    let mut r = Report::new();
    let expected = SpecDescriptor::FullSpec(BoolAlg::RatInt);
    r.check(
        "support",
        format!("σ = {}, support {}", res.sigma, res.support),
        (res.support != expected).then(|| res.support.to_string()),
    );
    let via_quotient = quotient_by_loewy(&alg, &res.sigma);
    r.check(
        "σ-quotient route",
        format!("R / s_σ R = {via_quotient}"),
        (via_quotient != BoolAlg::RatInt).then(|| via_quotient.to_string()),
    );
    let rational = res
        .probes
        .iter()
        .filter(|p| matches!(p, PrimeRep::ProductPrime(Side::Right, _)))
        .count();
    r.check(
        "representable primes",
        format!("{rational} primes of ratint tested"),
        (rational < 50).then(|| rational.to_string()),
    );
    r.extend(res.report);
    let unit = via_quotient.one();
    match uniformity_refuter(&via_quotient, &unit, REFUTER_DEPTH) {
        Ok(tree) => {
            let v = verify_split_tree(&via_quotient, &unit, &tree, REFUTER_DEPTH);
            r.check(
                "uniformity refuter",
                format!("{} pairwise-disjoint leaves below 1", tree.leaves().len()),
                (tree.leaves().len() != 1 << REFUTER_DEPTH).then(|| tree.render()),
            );
            r.extend(v);
        }
        Err(e) => r.fail("uniformity refuter", "split tree at depth 6", e.to_string()),
    }
    r
}

const FINCOF_SAMPLES: usize = 200;

pub(super) fn fincof_socle(seed: u64) -> Report {
    let alg = BoolAlg::Fincof;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 8);
    let samples: Vec<Element> = (0..FINCOF_SAMPLES)
        .map(|_| random_element(&alg, &mut rng))
        .collect();
    let one = Ordinal::one();
    let mut r = Report::new();
    let mut cx = None;
    let mut finite = 0;
    for e in &samples {
        let Element::Fincof(f) = e else { unreachable!() };
        let in_s1 = in_loewy_ideal(&alg, e, &one) == Ok(true);
        let in_probe = prime_membership(&alg, e, &PrimeRep::FincofAtInfinity) == Ok(true);
        finite += usize::from(!f.cofinite);
        if (in_s1 != !f.cofinite || in_s1 != in_probe) && cx.is_none() {
            cx = Some(format!("{e}: s_1 {in_s1}, finite {}, at-infinity {in_probe}", !f.cofinite));
        }
    }
    r.check(
        "s_1 = finite sets = prime at infinity",
        format!("{} samples, {finite} finite", samples.len()),
        cx,
    );
    match verify_loewy_spec_correspondence(&alg, &one, &samples) {
        Ok(v) => r.extend(v),
        Err(e) => r.fail("correspondence", "verifier ran", e.to_string()),
    }
    let q = quotient_by_loewy(&alg, &one);
    r.check(
        "quotient",
        format!("fincof / s_1 = {q}"),
        (q != BoolAlg::FinSet(1)).then(|| q.to_string()),
    );
    r
}
