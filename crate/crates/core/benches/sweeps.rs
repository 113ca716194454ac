use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use k3clifford::classifier::ample_falsifier;
use k3clifford::clifford::sweep_theorem;
use k3clifford::fixedcomp::exceptional_triples_with;
use k3clifford::par::Execution;
use k3clifford::SurfaceParams;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn grid(s_hi: i128, offsets: (i128, i128), base: bool) -> Vec<SurfaceParams> {
    (-1..=s_hi)
        .flat_map(|s| (2 * s + offsets.0..=2 * s + offsets.1).map(move |g| (g, s)))
        .map(|(g, s)| {
            if base {
                SurfaceParams::base(g, s).unwrap()
            } else {
                SurfaceParams::theorem(g, s).unwrap()
            }
        })
        .collect()
}

fn falsifier(c: &mut Criterion) {
    let p = SurfaceParams::base(40, 10).unwrap();
    let mut group = c.benchmark_group("ample_falsifier");
    for window in [100, 400] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, window), &window, |b, &w| {
                b.iter(|| ample_falsifier(black_box(&p), w, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn theorem_sweep(c: &mut Criterion) {
    let cells = grid(30, (14, 100), false);
    let mut group = c.benchmark_group("sweep_theorem");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| sweep_theorem(black_box(&cells), exec)));
    }
    group.finish();
}

fn triple_filter(c: &mut Criterion) {
    let cells = grid(25, (13, 80), true);
    let mut group = c.benchmark_group("exceptional_triples");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| exceptional_triples_with(black_box(&cells), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, falsifier, theorem_sweep, triple_filter);
criterion_main!(benches);
