use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wscat_core::finposet::{FinPoset, SubsetMask, Topology};
use wscat_core::selftest::gen::{all_posets, random_poset, random_subset};
use wscat_core::selftest::oracle::weakly_visible_by_search;

fn witness_agrees(x: &FinPoset, ups: &[SubsetMask], s: SubsetMask) -> Result<(), String> {
    let fast = x.weakly_visible_witness(s);
    let slow = weakly_visible_by_search(x, ups, s);
    if fast.is_some() != slow.is_some() {
        return Err(format!("{} s={}: {fast:?} vs {slow:?}", x.to_json(), x.format_subset(s)));
    }
    if let Some(w) = fast {
        if !x.is_up_set(w.y1) || !x.is_up_set(w.y2) || w.witnessed() != s {
            return Err(format!("bad witness {w:?} for {}", x.format_subset(s)));
        }
    }
    if fast.is_some() != x.is_convex(s) {
        return Err(format!("convexity disagrees on {}", x.format_subset(s)));
    }
    Ok(())
}

#[test]
fn witness_matches_search_up_to_six_points() {
    for n in 0..=6 {
        for x in all_posets(n) {
            let ups = x.up_sets();
            for s in x.full().subsets() {
                witness_agrees(&x, &ups, s).unwrap();
            }
        }
    }
}

#[test]
fn inverse_is_zariski_of_the_reverse() {
    for n in 0..=5 {
        for x in all_posets(n) {
            let r = x.reversed();
            for s in x.full().subsets() {
                assert_eq!(x.closure(s, Topology::Inverse), r.closure(s, Topology::Zariski));
                assert_eq!(x.open_hull(s, Topology::Inverse), r.open_hull(s, Topology::Zariski));
                assert_eq!(
                    x.cb_rank_and_perfect(s, Topology::Inverse),
                    r.cb_rank_and_perfect(s, Topology::Zariski)
                );
                assert_eq!(x.closure(s, Topology::Constructible), s);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witness_matches_search_on_random_posets(
        seed in any::<u64>(),
        n in 7usize..=14,
        density in 0.5f64..0.95,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_poset(&mut rng, n, density);
        let ups = x.up_sets();
        prop_assume!(ups.len() <= 600);
        let mut subsets: Vec<SubsetMask> = (0..8).map(|_| random_subset(&mut rng, x.full())).collect();
        // intervals [p, q] are convex, so exercise the positive side too
        for p in 0..n {
            let q = (p * 7 + 3) % n;
            subsets.push(x.up_of(p) & x.down_of(q));
        }
        for s in subsets {
            prop_assert_eq!(witness_agrees(&x, &ups, s), Ok(()));
        }
    }

    #[test]
    fn refined_stages_are_open_and_cover(seed in any::<u64>(), n in 1usize..=10) {
        use wscat_core::refinement::{refine_cover, LocallyClosedCover};
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_poset(&mut rng, n, 0.4);
        let c = random_subset(&mut rng, x.full());
        let f = refine_cover(&x, Topology::Inverse, c, &LocallyClosedCover::whole(&x)).unwrap();
        prop_assert!(c.is_subset(f.top()));
        for w in f.stages.windows(2) {
            prop_assert!(w[0].is_subset(w[1]));
        }
    }
}
