use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use xpq_core::compgroup::{blow_up, component_group, quotient_by_wq};
use xpq_core::graph::{edge_brandt, edge_classes, vertex_brandt, vertex_classes};

fn graph_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph");
    group.sample_size(10);
    for q in [47u64, 101] {
        group.bench_function(format!("vertex_classes q={q}"), |b| b.iter(|| vertex_classes(black_box(q)).unwrap()));
    }
    let vs = vertex_classes(47).unwrap();
    group.bench_function("edge_classes (13,47)", |b| b.iter(|| edge_classes(black_box(13), &vs).unwrap()));
    let es = edge_classes(13, &vs).unwrap();
    group.bench_function("vertex_brandt l=3 q=47", |b| b.iter(|| vertex_brandt(&vs, black_box(3)).unwrap()));
    group.bench_function("edge_brandt l=3 (13,47)", |b| b.iter(|| edge_brandt(&vs, &es, black_box(3)).unwrap()));
    let blown = blow_up(&quotient_by_wq(&vs, &es));
    group.bench_function("component_group (13,47)", |b| b.iter(|| component_group(black_box(&blown)).unwrap()));
    group.finish();
}

criterion_group!(benches, graph_construction);
criterion_main!(benches);
