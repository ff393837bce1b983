use std::sync::Arc;

use albert::algebra3::TwistedFieldSpec;
use albert::engine::{per_vector_profile, AvAtlas, PairVector};
use albert::gf::{Field, FieldTower, Gf};
use albert::par::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn algebra(q: u64) -> albert::algebra3::Algebra3 {
    let f = Arc::new(Gf::standard(q).unwrap());
    let tw = Arc::new(FieldTower::standard(f.clone()).unwrap());
    let target = f.element(2);
    TwistedFieldSpec::with_norm(tw, target).unwrap().to_structure_constants()
}

fn executors() -> Vec<(&'static str, Exec)> {
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    vec![("sequential", Exec::sequential()), ("parallel", Exec::parallel(workers))]
}

fn atlas_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("atlas");
    group.sample_size(10);
    for q in [4u64, 5] {
        let alg = algebra(q);
        for (name, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(name, q), &q, |b, _| b.iter(|| AvAtlas::build(&alg, &exec)));
        }
    }
    group.finish();
}

fn profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("profile");
    group.sample_size(20);
    for q in [4u64, 5] {
        let alg = algebra(q);
        let atlas = AvAtlas::build(&alg, &Exec::sequential());
        let v = PairVector::parse(alg.field(), "[1,0,0],[0,1,0]").unwrap();
        for (name, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(name, q), &q, |b, _| {
                b.iter(|| per_vector_profile(&alg, &atlas, &v, &exec, true).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, atlas_build, profile);
criterion_main!(benches);
