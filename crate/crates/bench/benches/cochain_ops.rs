use criterion::{criterion_group, criterion_main, Criterion};
use linkform_core::cohomology::Space;
use linkform_core::{Cochain, Ring, SimplicialComplex};
use rand::{Rng, SeedableRng};

fn bench_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduction");
    group.sample_size(10);
    group.bench_function("rp5", |b| {
        let rp5 = SimplicialComplex::rp_space(5).unwrap();
        b.iter(|| {
            let basis = rp5.cells_by_dim();
            linkform_core::reduction::Reduction::new(&rp5, &basis).total_critical()
        })
    });
    group.finish();
}

fn bench_cup(c: &mut Criterion) {
    let mut group = c.benchmark_group("cup");
    let rp5 = Space::new(SimplicialComplex::rp_space(5).unwrap());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let u = Cochain::from_values(
        2,
        Ring::Mod(2),
        (0..rp5.basis(2).len()).map(|_| rng.gen_range(0..2)).collect(),
    );
    group.bench_function("cup1_rp5_deg2", |b| {
        b.iter(|| rp5.cup_i(&u, &u, 1).unwrap())
    });
    group.bench_function("sq2_rp5", |b| {
        let g = rp5.cohomology(Ring::Mod(2), 2);
        let x = rp5.class_from_coords(&g, &[1]);
        b.iter(|| rp5.sq(2, &x).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_reduction, bench_cup);
criterion_main!(benches);
