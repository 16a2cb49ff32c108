use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jordan_bench::halton_points;
use jordan_core::fixtures::jordan_fixtures;
use jordan_core::{classify, validate_jordan, winding_number, ClassifyOptions, ValidationOptions};
use std::hint::black_box;

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for (name, spec) in jordan_fixtures() {
        let jc = validate_jordan(&spec, ValidationOptions::default()).unwrap();
        let pts = halton_points(jc.carrier().bounds().expand(0.25), 256);
        let opts = ClassifyOptions::default();
        group.bench_with_input(BenchmarkId::from_parameter(name), &pts, |b, pts| {
            b.iter(|| {
                for p in pts {
                    let _ = black_box(classify(&jc, *p, &opts));
                }
            })
        });
    }
    group.finish();
}

fn bench_winding(c: &mut Criterion) {
    let mut group = c.benchmark_group("winding");
    for (name, spec) in jordan_fixtures() {
        let jc = validate_jordan(&spec, ValidationOptions::default()).unwrap();
        let pts = halton_points(jc.carrier().bounds().expand(0.25), 256);
        group.bench_with_input(BenchmarkId::from_parameter(name), &pts, |b, pts| {
            b.iter(|| {
                for p in pts {
                    let _ = black_box(winding_number(&jc, *p, 0.05));
                }
            })
        });
    }
    group.finish();
}

fn bench_validate(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    group.sample_size(10);
    for (name, spec) in jordan_fixtures() {
        group.bench_function(name, |b| {
            b.iter(|| validate_jordan(black_box(&spec), ValidationOptions::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_classify, bench_winding, bench_validate);
criterion_main!(benches);
