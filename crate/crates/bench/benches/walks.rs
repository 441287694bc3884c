use std::hint::black_box;

use caywalk_core::analytics::{build_walk_matrix, time_averaged, walk_spectrum};
use caywalk_core::engine::basis_state;
use caywalk_core::{BigInt, BigRational, Caps, CayleyGraph, CoinOperator, Complex64, GeneratingSet, Walk};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn float_steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("float_step");
    for n in [4, 5, 6, 7] {
        let g = CayleyGraph::new(GeneratingSet::transpositions(n).unwrap()).unwrap();
        let walk = Walk::<Complex64>::new(&g, &CoinOperator::grover(g.valency()).unwrap()).unwrap();
        let state = walk.evolve(&basis_state(&g, 0, 0).unwrap(), 4).unwrap();
        group.bench_with_input(BenchmarkId::new("transpositions", n), &state, |b, s| {
            b.iter(|| walk.step(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn exact_evolution(c: &mut Criterion) {
    let g = CayleyGraph::new(GeneratingSet::transpositions(4).unwrap()).unwrap();
    let grover = Walk::<BigRational>::new(&g, &CoinOperator::grover(6).unwrap()).unwrap();
    let start = basis_state(&g, 0, 0).unwrap();
    c.bench_function("exact_grover_s4_10_steps", |b| b.iter(|| grover.evolve(black_box(&start), 10).unwrap()));

    let g = CayleyGraph::new(GeneratingSet::gamma(5).unwrap()).unwrap();
    let hadamard = Walk::<BigInt>::new(&g, &CoinOperator::hadamard()).unwrap();
    let start = basis_state(&g, 0, 0).unwrap();
    c.bench_function("scaled_hadamard_gamma5_20_steps", |b| {
        b.iter(|| hadamard.evolve(black_box(&start), 20).unwrap())
    });
}

fn analytics(c: &mut Criterion) {
    let g = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
    let walk = Walk::<Complex64>::new(&g, &CoinOperator::hadamard()).unwrap();
    let start = basis_state(&g, 0, 0).unwrap();
    c.bench_function("time_average_gamma4_1024", |b| {
        b.iter(|| time_averaged(&walk, black_box(&start), 1024).unwrap())
    });

    let mut group = c.benchmark_group("spectrum");
    group.sample_size(10);
    for n in [4, 5] {
        let g = CayleyGraph::new(GeneratingSet::gamma(n).unwrap()).unwrap();
        let u = build_walk_matrix(&g, &CoinOperator::hadamard(), None, &Caps::default()).unwrap();
        group.bench_with_input(BenchmarkId::new("gamma_hadamard", n), &u, |b, u| {
            b.iter(|| walk_spectrum(black_box(u)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, float_steps, exact_evolution, analytics);
criterion_main!(benches);
