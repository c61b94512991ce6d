use alcove_atlas::conjecture::{check_conjecture, ConjectureOptions};
use alcove_atlas::graph::dual_graph_from_alcoves;
use alcove_atlas::{enumerate_dilated_alcoves, Strategy};
use alcove_atlas_bench::specs;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for spec in specs() {
        for strategy in [Strategy::Words, Strategy::Pairs, Strategy::Brute] {
            group.bench_with_input(BenchmarkId::new(format!("{strategy:?}"), spec), &spec, |b, spec| {
                b.iter(|| enumerate_dilated_alcoves(spec, strategy).unwrap())
            });
        }
    }
    group.finish();
}

fn dual_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("dual-graph");
    for spec in specs() {
        let alcoves = enumerate_dilated_alcoves(&spec, Strategy::Words).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(spec), &alcoves, |b, alcoves| {
            b.iter(|| dual_graph_from_alcoves(alcoves).unwrap())
        });
    }
    group.finish();
}

fn conjecture(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjecture");
    group.sample_size(10);
    for spec in specs() {
        group.bench_with_input(BenchmarkId::from_parameter(spec), &spec, |b, spec| {
            b.iter(|| check_conjecture(spec, &ConjectureOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, dual_graph, conjecture);
criterion_main!(benches);
