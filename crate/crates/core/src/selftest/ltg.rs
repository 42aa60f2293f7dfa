use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen::{random_object, random_subset};
use super::Tally;
use crate::dcat::{
    ltg_check, ltg_filtration, ltg_reconstruct, spectrum, support_identities, DObj, DcatError,
};
use crate::finposet::{SubsetMask, Topology};
use crate::refinement::{verify_filtration, Filtration};
use crate::report::Report;

const MAX_EXHAUSTIVE_BASE: usize = 4;
const DEGREES: [i64; 3] = [-1, 0, 1];
const MAX_DIM: u64 = 2;
const RANDOM_CASES: usize = 1000;
const MAX_RANDOM_BASE: usize = 10;

/// Members of the cover family encoded by the bits of `family`.
fn family_members(family: u64, n: usize) -> Vec<SubsetMask> {
    (0..1u64 << n)
        .filter(|w| family >> w & 1 == 1)
        .map(SubsetMask)
        .collect()
}

/// For every support `S ⊆ {p0..p(n-1)}` and every family of subsets, the
/// refinement either reports the gap (when the family misses `S`) or
/// verifies, and is independent of the family. Returns the filtration per
/// support for reuse on objects.
fn exhaustive_covers(n: usize, tally: &mut Tally) -> Vec<Filtration> {
    let x = spectrum(n);
    let subsets = 1u64 << n;
    let mut canonical = Vec::new();
    for s in SubsetMask::full(n).subsets() {
        let (_, base) = ltg_filtration(n, s, &[x.full()]).expect("whole space covers");
        for family in 0..1u64 << subsets {
            let members = family_members(family, n);
            let covered = members.iter().fold(SubsetMask::EMPTY, |a, &m| a | m);
            let context = || format!("k^{n}, supp {}, cover {members:?}", x.format_subset(s));
            match ltg_filtration(n, s, &members) {
                Err(DcatError::CoverGap(_)) => {
                    tally.record("gap reported iff cover misses support", !s.is_subset(covered), context)
                }
                Err(e) => tally.record("refinement succeeds", false, || format!("{}: {e}", context())),
                Ok((lc, f)) => {
                    tally.record("gap reported iff cover misses support", s.is_subset(covered), context);
                    tally.absorb(&verify_filtration(&x, Topology::Inverse, s, &lc, &f), context);
                    tally.record(
                        "filtration independent of cover",
                        f.stages == base.stages && f.pieces == base.pieces,
                        context,
                    );
                }
            }
        }
        canonical.push(base);
    }
    canonical
}

/// Every object over `k^n` with dimensions `≤ MAX_DIM` in [`DEGREES`].
fn all_objects(n: usize) -> impl Iterator<Item = DObj> {
    let slots = n * DEGREES.len();
    let base = MAX_DIM + 1;
    (0..base.pow(slots as u32)).map(move |mut code| {
        let mut entries = Vec::with_capacity(slots);
        for i in 0..n {
            for d in DEGREES {
                entries.push(((i, d), code % base));
                code /= base;
            }
        }
        DObj::new(n, entries).expect("indices in range")
    })
}

fn object_checks(t: &DObj, f: &Filtration, tally: &mut Tally) {
    let context = || format!("t = {t} over k^{}", t.base());
    tally.absorb(&ltg_reconstruct(t, f), context);
    let cx = SubsetMask::full(t.base())
        .subsets()
        .find_map(|y| support_identities(t, y).map(|m| format!("Y={y:?}: {m}")));
    tally.record("support identities and detection", cx.is_none(), || {
        format!("{}: {}", context(), cx.clone().unwrap_or_default())
    });
}

pub(super) fn local_to_global(seed: u64) -> Report {
    let mut tally = Tally::default();
    let mut objects = 0usize;
    for n in 0..=MAX_EXHAUSTIVE_BASE {
        let filtrations = exhaustive_covers(n, &mut tally);
        for t in all_objects(n) {
            objects += 1;
            object_checks(&t, &filtrations[t.supp().0 as usize], &mut tally);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
    for case in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=MAX_RANDOM_BASE);
        let t = random_object(&mut rng, n, 3);
        let full = SubsetMask::full(n);
        let mut cover = Vec::new();
        while !t.supp().is_subset(cover.iter().fold(SubsetMask::EMPTY, |a, &m| a | m)) {
            cover.push(random_subset(&mut rng, full));
        }
        let context = || format!("random case {case}: t = {t}, cover {cover:?}");
        match ltg_check(&t, &cover) {
            Ok(out) => tally.absorb(&out.report, context),
            Err(e) => tally.record("refinement succeeds", false, || format!("{}: {e}", context())),
        }
        let cx = (0..16)
            .map(|_| random_subset(&mut rng, full))
            .chain([t.supp(), SubsetMask::EMPTY, full])
            .find_map(|y| support_identities(&t, y).map(|m| format!("Y={y:?}: {m}")));
        tally.record("support identities and detection", cx.is_none(), || {
            format!("{}: {}", context(), cx.clone().unwrap_or_default())
        });
    }
    let mut r = tally.into_report();
    r.pass(
        "coverage",
        format!(
            "{objects} objects over k^n, n ≤ {MAX_EXHAUSTIVE_BASE}, every cover family; \
             {RANDOM_CASES} random cases with n ≤ {MAX_RANDOM_BASE}"
        ),
    );
    r
}
