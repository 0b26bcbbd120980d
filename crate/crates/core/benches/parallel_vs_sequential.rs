use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symloop::bottcycles::{self, PlaneFamily, SingularPlane};
use symloop::{catalog, spectrum, weyl, Execution, Rational};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_critical");
    for name in ["gr2c4", "gr2c4*sphere(3)"] {
        let s = catalog(name).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, name), &exec, |b, &exec| {
                b.iter(|| {
                    spectrum::enumerate_critical_with(&s, black_box(Rational::from(60)), exec)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn weyl_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("weyl_group");
    let s = catalog("gr2c4*gr2c4").unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| weyl::generate_group_with(&s, weyl::DEFAULT_GROUP_CAP, exec).unwrap())
        });
    }
    group.finish();
}

fn bott_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("bott_sweep");
    let s = catalog("gr2c4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let families: Vec<PlaneFamily> = (0..200)
        .map(|_| {
            PlaneFamily(
                (0..3)
                    .map(|_| SingularPlane::new(rng.random_range(0..4), rng.random_range(-3..=3)))
                    .collect(),
            )
        })
        .collect();
    for (label, exec) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| bottcycles::coproduct_sweep(&s, &families, 7, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, enumerate, weyl_closure, bott_sweep);
criterion_main!(benches);
