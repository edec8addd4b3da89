use criterion::{criterion_group, criterion_main, Criterion};
use dsmat::triangle3::{eigen_grid_check, slice_scan};
use dsmat::{are_perm_similar, certify, char_poly, enumerate_regular, mate_for, tri_to_matrix, Scope};
use dsmat_bench::{block_pair, off_segment_point, petersen, relabelled_pair, slice_example};
use std::hint::black_box;

fn spectra(c: &mut Criterion) {
    let (a, _) = relabelled_pair(10);
    c.bench_function("char_poly 10x10", |b| b.iter(|| char_poly(black_box(&a))));
}

fn permutation_similarity(c: &mut Criterion) {
    let (x, y) = relabelled_pair(10);
    c.bench_function("perm similar 10x10 relabelled", |b| b.iter(|| are_perm_similar(black_box(&x), black_box(&y)).unwrap()));
    let (p, q) = block_pair();
    c.bench_function("perm similar J2+J4 vs J3+J3", |b| b.iter(|| are_perm_similar(black_box(&p), black_box(&q)).unwrap()));
}

fn triangle(c: &mut Criterion) {
    let m = tri_to_matrix(&off_segment_point()).unwrap();
    c.bench_function("mate_for (1/2, 1/2)", |b| b.iter(|| mate_for(black_box(&m)).unwrap()));
    let a = slice_example();
    c.bench_function("certify trace-1/3 example", |b| b.iter(|| certify(black_box(&a), Scope::Symmetric, 0, 0).unwrap()));
    let mut g = c.benchmark_group("grids");
    g.sample_size(10);
    g.bench_function("eigen grid 101", |b| b.iter(|| eigen_grid_check(101).unwrap()));
    g.bench_function("slice scan 101", |b| b.iter(|| slice_scan(black_box(&a), 101).unwrap()));
    g.finish();
}

fn graphs(c: &mut Criterion) {
    let mut g = c.benchmark_group("graphs");
    g.sample_size(10);
    g.bench_function("enumerate 3-regular on 10", |b| b.iter(|| enumerate_regular(10, 3).unwrap()));
    let p = petersen();
    g.bench_function("certify scaled Petersen", |b| {
        b.iter(|| certify(&dsmat::scale_to_ds(black_box(&p)).unwrap(), Scope::Symmetric, 0, 100).unwrap())
    });
    g.finish();
}

criterion_group!(benches, spectra, permutation_similarity, triangle, graphs);
criterion_main!(benches);
