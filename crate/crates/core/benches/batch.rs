use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use higgsgrass::grasseq::rank1_ideal;
use higgsgrass::par::{map_par, map_seq};
use higgsgrass::structure::{predicted_full, JordanSpec};

/// One-eigenvalue specs of rank 6 with strictly decreasing sizes.
fn corpus() -> Vec<JordanSpec> {
    let shapes: &[&[(usize, usize)]] = &[
        &[(6, 1)],
        &[(5, 1), (1, 1)],
        &[(4, 1), (2, 1)],
        &[(4, 1), (1, 2)],
        &[(3, 2)],
        &[(3, 1), (2, 1), (1, 1)],
        &[(3, 1), (1, 3)],
        &[(2, 3)],
        &[(2, 2), (1, 2)],
        &[(2, 1), (1, 4)],
    ];
    shapes
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let lambda = ["0", "x", "x^2 - 3"][k % 3];
            let blocks: Vec<(&str, usize, usize)> = s.iter().map(|&(i, m)| (lambda, i, m)).collect();
            JordanSpec::parse(&["x"], &blocks).unwrap()
        })
        .collect()
}

fn agree(spec: &JordanSpec) -> bool {
    let g = rank1_ideal(&spec.to_higgs().unwrap()).unwrap();
    g.ideal.equals(&predicted_full(spec).unwrap()).unwrap()
}

fn bench(c: &mut Criterion) {
    let specs = corpus();
    let mut group = c.benchmark_group("structure_batch");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| map_seq(black_box(&specs), agree)));
    group.bench_function("parallel", |b| b.iter(|| map_par(black_box(&specs), agree)));
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
