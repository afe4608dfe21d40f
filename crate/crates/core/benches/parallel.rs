use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pd3_core::bar::{mayer_vietoris_h3, BarComplex};
use pd3_core::corpus::Corpus;
use pd3_core::group::GroupId;
use pd3_core::intmat::{smith, IntMatrix, Transforms};
use pd3_core::par::Parallelism;
use pd3_core::report::run_suite;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_function(BenchmarkId::new(name, "L=5"), |b| {
            b.iter(|| run_suite(Corpus::embedded(), None, 5, par).unwrap())
        });
    }
    g.finish();
}

fn bar(c: &mut Criterion) {
    let mut g = c.benchmark_group("bar");
    g.sample_size(10);
    let s3 = BarComplex::new(GroupId::S3).unwrap();
    for (name, par) in MODES {
        g.bench_function(BenchmarkId::new(name, "S3 d4"), |b| b.iter(|| s3.differential(4, par)));
        g.bench_function(BenchmarkId::new(name, "Mayer-Vietoris H3"), |b| b.iter(|| mayer_vietoris_h3(par).unwrap()));
    }
    g.finish();
}

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    g.sample_size(10);
    let s3 = BarComplex::new(GroupId::S3).unwrap();
    let d4 = s3.differential(4, Parallelism::Sequential);
    let d3 = s3.differential(3, Parallelism::Sequential);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rows: Vec<Vec<i64>> =
        (0..60).map(|_| (0..60).map(|_| if rng.gen_bool(0.1) { rng.gen_range(-9..=9) } else { 0 }).collect()).collect();
    let sparse = IntMatrix::from_i64(&rows);
    for (name, par) in MODES {
        g.bench_function(BenchmarkId::new(name, "bar d4 of S3"), |b| b.iter(|| smith(&d4, Transforms::NONE, par)));
        g.bench_function(BenchmarkId::new(name, "bar d3 of S3 with transforms"), |b| {
            b.iter(|| smith(&d3, Transforms::BOTH, par))
        });
        g.bench_function(BenchmarkId::new(name, "sparse 60x60 with transforms"), |b| {
            b.iter(|| smith(&sparse, Transforms::BOTH, par))
        });
    }
    g.finish();
}

criterion_group!(benches, suite, bar, snf);
criterion_main!(benches);
