use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wscat_core::boolring::{in_loewy_ideal, random_element, uniformity_refuter, BoolAlg};
use wscat_core::dcat::{ltg_check, DObj};
use wscat_core::finposet::{SubsetMask, Topology};
use wscat_core::refinement::{refine_cover, verify_filtration};
use wscat_core::selftest::gen::{random_cover, random_object, random_poset};
use wscat_core::Ordinal;

fn refinement(c: &mut Criterion) {
    let mut group = c.benchmark_group("refine_cover");
    for n in [6usize, 12, 24] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let x = random_poset(&mut rng, n, 0.3);
        let t = Topology::Inverse;
        let cover = random_cover(&mut rng, &x, t, x.full());
        group.bench_with_input(BenchmarkId::new("refine", n), &n, |b, _| {
            b.iter(|| refine_cover(&x, t, black_box(x.full()), &cover).unwrap())
        });
        let f = refine_cover(&x, t, x.full(), &cover).unwrap();
        group.bench_with_input(BenchmarkId::new("verify", n), &n, |b, _| {
            b.iter(|| verify_filtration(&x, t, x.full(), &cover, black_box(&f)))
        });
    }
    group.finish();
}

fn loewy(c: &mut Criterion) {
    let alg = BoolAlg::ordint("w^3*2+w^2+5".parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let elems: Vec<_> = (0..64).map(|_| random_element(&alg, &mut rng)).collect();
    let alpha = Ordinal::nat(2);
    c.bench_function("in_loewy_ideal/ordint", |b| {
        b.iter(|| {
            elems
                .iter()
                .filter(|e| in_loewy_ideal(&alg, e, &alpha).unwrap())
                .count()
        })
    });
    let rat = BoolAlg::RatInt;
    c.bench_function("uniformity_refuter/ratint/depth8", |b| {
        b.iter(|| uniformity_refuter(&rat, &rat.one(), black_box(8)).unwrap())
    });
}

fn local_to_global(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 10;
    let t: DObj = random_object(&mut rng, n, 3);
    let cover: Vec<SubsetMask> = (0..n).map(SubsetMask::singleton).collect();
    c.bench_function("ltg_check/k^10", |b| b.iter(|| ltg_check(black_box(&t), &cover).unwrap()));
}

criterion_group!(benches, refinement, loewy, local_to_global);
criterion_main!(benches);
