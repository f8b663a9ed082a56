use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use unimod_bench::{complexes, fredholm_matrix, random_graph};
use unimod_core::characteristics::{forest_count, permutation_expansion};
use unimod_core::complex::{barycentric_refinement, whitney};
use unimod_core::connection::{connection_graph, graphic_matroid};
use unimod_core::graph::{standard_graph, Family};
use unimod_core::linalg::{adjugate_inverse, charpoly, det, permanent};
use unimod_core::prime::prime_connection_graph;

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    for (name, x) in complexes() {
        let m = fredholm_matrix(&x);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{name}/{}", m.rows())), &m, |b, m| {
            b.iter(|| det(black_box(m)).unwrap())
        });
    }
    let h = prime_connection_graph(400).unwrap().fredholm_matrix();
    group.bench_function(format!("prime-connection-400/{}", h.rows()), |b| b.iter(|| det(black_box(&h)).unwrap()));
    group.finish();
}

fn inverses(c: &mut Criterion) {
    let x = whitney(&standard_graph(Family::Petersen, 0).unwrap());
    let m = fredholm_matrix(&x);
    c.bench_function("adjugate_inverse/petersen", |b| b.iter(|| adjugate_inverse(black_box(&m)).unwrap()));
    let a = random_graph(24, 80).adjacency_matrix();
    c.bench_function("charpoly/gnm-24-80", |b| b.iter(|| charpoly(black_box(&a)).unwrap()));
}

fn construction(c: &mut Criterion) {
    let g = random_graph(14, 50);
    c.bench_function("whitney/gnm-14-50", |b| b.iter(|| whitney(black_box(&g))));
    let x = whitney(&g);
    c.bench_function("connection_graph/gnm-14-50", |b| b.iter(|| connection_graph(black_box(&x))));
    c.bench_function("barycentric/gnm-14-50", |b| b.iter(|| barycentric_refinement(black_box(&x))));
    let k = standard_graph(Family::Complete, 5).unwrap();
    c.bench_function("graphic_matroid/K5", |b| b.iter(|| graphic_matroid(black_box(&k), 10_000).unwrap()));
}

fn counting(c: &mut Criterion) {
    let k3 = connection_graph(&whitney(&standard_graph(Family::Complete, 3).unwrap()));
    c.bench_function("permutation_expansion/K3'", |b| b.iter(|| permutation_expansion(black_box(&k3)).unwrap()));
    let k10 = standard_graph(Family::Complete, 10).unwrap().fredholm_matrix();
    c.bench_function("permanent/K10", |b| b.iter(|| permanent(black_box(&k10)).unwrap()));
    let g = random_graph(30, 120);
    c.bench_function("forest_count/gnm-30-120", |b| b.iter(|| forest_count(black_box(&g))));
}

criterion_group!(benches, determinants, inverses, construction, counting);
criterion_main!(benches);
