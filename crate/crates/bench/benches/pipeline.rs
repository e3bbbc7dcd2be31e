use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use subconst::algebra::{adjacency_matrix, dual_idempotents, lfr_decomposition};
use subconst::analysis::{analyze, AnalysisOptions, GraphSource};
use subconst::graph::{gen_dual_polar, gen_hamming, DEFAULT_SIZE_CAP};
use subconst::linalg::algebra_closure;
use subconst::modules::commutant;
use subconst::{distance_partition, Graph, RationalMatrix};

fn generators(g: &Graph) -> (Vec<RationalMatrix>, Vec<RationalMatrix>) {
    let p = distance_partition(g, 0).unwrap();
    let a = adjacency_matrix(g);
    let e = dual_idempotents(&p);
    let dec = lfr_decomposition(&a, &e).unwrap();
    let mut t = vec![a];
    t.extend(e);
    (t, vec![dec.l, dec.f, dec.r])
}

fn closure(c: &mut Criterion) {
    let h33 = gen_hamming(3, 3, DEFAULT_SIZE_CAP).unwrap();
    let d32 = gen_dual_polar(3, 2, DEFAULT_SIZE_CAP).unwrap();
    let (t, q) = generators(&d32);
    c.bench_function("closure T of D_3(2)", |b| {
        b.iter(|| algebra_closure(black_box(&t), true).unwrap())
    });
    c.bench_function("closure Q of D_3(2)", |b| {
        b.iter(|| algebra_closure(black_box(&q), true).unwrap())
    });
    let (t, _) = generators(&h33);
    c.bench_function("closure T of H(3,3)", |b| {
        b.iter(|| algebra_closure(black_box(&t), true).unwrap())
    });
}

fn commutant_bench(c: &mut Criterion) {
    let d32 = gen_dual_polar(3, 2, DEFAULT_SIZE_CAP).unwrap();
    let (t, _) = generators(&d32);
    c.bench_function("commutant of T for D_3(2)", |b| {
        b.iter(|| commutant(black_box(&t)).unwrap())
    });
}

fn full(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(10);
    for source in [GraphSource::Hamming { d: 3, n: 3 }, GraphSource::DualPolar { d: 3, q: 2 }] {
        let g = source.load(DEFAULT_SIZE_CAP).unwrap();
        group.bench_function(source.to_string(), |b| {
            b.iter(|| analyze(&g, &source, 0, &AnalysisOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closure, commutant_bench, full);
criterion_main!(benches);
