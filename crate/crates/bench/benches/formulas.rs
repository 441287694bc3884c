use std::hint::black_box;

use caywalk_core::pathsum::{amplitude_character_sum, path_count_table, PathSum};
use caywalk_core::walsh::{hadamard_amplitudes, walsh_seq};
use caywalk_core::{Caps, CayleyGraph, CharacterTable, GeneratingSet, GroverParams};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn path_tables(c: &mut Criterion) {
    let caps = Caps::default();
    let g = CayleyGraph::new(GeneratingSet::transpositions(4).unwrap()).unwrap();
    let mut group = c.benchmark_group("path_count_table_s4");
    for t in [3, 5, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| path_count_table(&g, black_box(t), 0, &caps).unwrap())
        });
    }
    group.finish();

    let params = GroverParams::new(6).unwrap();
    c.bench_function("uniform_amplitudes_s4_t5", |b| {
        b.iter(|| PathSum::new(&g, 5, &caps).unwrap().uniform_amplitudes(black_box(&params)).unwrap())
    });
    let table = CharacterTable::new(4).unwrap();
    c.bench_function("character_sum_s4_t4", |b| {
        b.iter(|| amplitude_character_sum(&g, &table, &params, 4, 0, black_box(5), &caps).unwrap())
    });
}

fn characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    for n in [6, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| CharacterTable::new(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn walsh(c: &mut Criterion) {
    let caps = Caps::default();
    c.bench_function("walsh_seq_20", |b| b.iter(|| walsh_seq(black_box(20), &caps).unwrap()));
    let g = CayleyGraph::new(GeneratingSet::gamma(5).unwrap()).unwrap();
    c.bench_function("hadamard_closed_form_gamma5_t16", |b| {
        b.iter(|| hadamard_amplitudes(&g, black_box(16), &caps).unwrap())
    });
}

criterion_group!(benches, path_tables, characters, walsh);
criterion_main!(benches);
