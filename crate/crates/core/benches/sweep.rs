use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use efl_core::bounds::color_budget;
use efl_core::coloring::{greedy_recolor, VertexOrder};
use efl_core::generators::random_regular_linear;
use efl_core::harness::{run_sweep, SweepConfig};
use efl_core::{Execution, Hypergraph};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn greedy_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_batch");
    group.sample_size(10);
    for n in [50usize, 100] {
        let instances: Vec<Hypergraph> = (0..64).map(|seed| random_regular_linear(n, 4, seed).unwrap()).collect();
        let palette = color_budget(n as u64, 4).unwrap() as u32;
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &instances, |b, instances| {
                b.iter(|| {
                    exec.map(instances, |h| {
                        let order = VertexOrder::ById.resolve(h.num_vertices());
                        greedy_recolor(h, palette, &order).unwrap().is_colored()
                    })
                })
            });
        }
    }
    group.finish();
}

fn full_sweep(c: &mut Criterion) {
    let config = SweepConfig::parse(
        r#"
        seed = 1
        [[generator]]
        kind = "random_regular_linear"
        n = [20, 50, 100]
        r = [3, 4, 5]
        seeds = 8
        procedures = ["greedy_recolor"]

        [[generator]]
        kind = "random_uniform_linear"
        num_vertices = [60, 120]
        rank = [3]
        n_edges = [20, 40]
        force_high_degree = [true]
        seeds = 8
        procedures = ["uniform_maxdeg", "greedy_recolor"]
        "#,
    )
    .unwrap();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(run_sweep(&config, None, exec).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, greedy_batch, full_sweep);
criterion_main!(benches);
