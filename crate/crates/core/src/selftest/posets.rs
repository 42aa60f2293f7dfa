use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen::{all_posets, random_cover, random_poset, random_subset};
use super::oracle::perfect_core_by_search;
use super::Tally;
use crate::finposet::{FinPoset, SubsetMask, Topology};
use crate::refinement::{
    refine_cover, scattered_degenerate_check, verify_filtration, LocallyClosedCover,
};
use crate::report::Report;

const RANDOM_CASES: usize = 1000;
const MAX_RANDOM_POINTS: usize = 12;
const MAX_EXHAUSTIVE_POINTS: usize = 6;

pub(super) fn random_refinements(seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = Topology::Inverse;
    let mut tally = Tally::default();
    for case in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=MAX_RANDOM_POINTS);
        let density = rng.gen_range(0.1..0.6);
        let x = random_poset(&mut rng, n, density);
        let c = random_subset(&mut rng, x.full());
        let cover = random_cover(&mut rng, &x, t, c);
        let context = || format!("case {case}: {} c={}", x.to_json(), x.format_subset(c));
        match refine_cover(&x, t, c, &cover) {
            Ok(f) => {
                tally.record("refinement succeeds", true, String::new);
                tally.absorb(&verify_filtration(&x, t, c, &cover, &f), context);
            }
            Err(e) => tally.record("refinement succeeds", false, || format!("{}: {e}", context())),
        }
    }
    tally.into_report()
}

fn exhaustive_posets() -> impl Iterator<Item = FinPoset> {
    (0..=MAX_EXHAUSTIVE_POINTS).flat_map(all_posets)
}

pub(super) fn singleton_covers() -> Report {
    let mut tally = Tally::default();
    for x in exhaustive_posets() {
        let mut check = |t: Topology, c: SubsetMask| {
            let cover = LocallyClosedCover::singletons(&x, t, c);
            let ok = refine_cover(&x, t, c, &cover)
                .map_err(|e| e.to_string())
                .and_then(|f| scattered_degenerate_check(&x, t, c, &f).map_err(|e| e.to_string()));
            let name = format!("singleton cover equals rank filtration ({t})");
            tally.record(&name, ok == Ok(true), || {
                format!("{} c={}: {ok:?}", x.to_json(), x.format_subset(c))
            });
        };
        for c in x.full().subsets() {
            check(Topology::Inverse, c);
        }
        check(Topology::Zariski, x.full());
        check(Topology::Constructible, x.full());
    }
    tally.into_report()
}

pub(super) fn perfect_cores() -> Report {
    let t = Topology::Inverse;
    let mut tally = Tally::default();
    for x in exhaustive_posets() {
        // opens of the inverse topology are the up-sets
        let opens = x.up_sets();
        for c in x.full().subsets() {
            let perfect = x.cb_rank_and_perfect(c, t).perfect;
            tally.record("perfect core empty", perfect.is_empty(), || {
                format!("{} c={}: core {}", x.to_json(), x.format_subset(c), x.format_subset(perfect))
            });
            let oracle = perfect_core_by_search(&opens, c);
            tally.record("agrees with brute-force derivation", oracle == perfect, || {
                format!("{} c={}", x.to_json(), x.format_subset(c))
            });
        }
    }
    tally.into_report()
}
