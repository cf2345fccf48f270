use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use scorza_bench::{albert_element, gaussian_matrix, octonion_pair, rng, secant_point};
use scorza_core::cd::cd_multiply;
use scorza_core::dual_pair::{reduce, CaseKind, DualPairCase};
use scorza_core::jordan::{generic_det, jordan_product, sharp};
use scorza_core::rng::DEFAULT_HEIGHT;
use scorza_core::strata::{rank_of, stratum_dimension};
use scorza_core::PSpaceModel;

fn algebra(c: &mut Criterion) {
    let (x, y) = octonion_pair();
    c.bench_function("cd_multiply/O_C", |b| b.iter(|| cd_multiply(black_box(&x), black_box(&y)).unwrap()));
    let a = albert_element();
    c.bench_function("jordan_product/H3(O_C)", |b| b.iter(|| jordan_product(black_box(&a), black_box(&a)).unwrap()));
    c.bench_function("sharp/H3(O_C)", |b| b.iter(|| sharp(black_box(&a)).unwrap()));
    c.bench_function("generic_det/H3(O_C)", |b| b.iter(|| generic_det(black_box(&a)).unwrap()));
}

fn linear(c: &mut Criterion) {
    let m = gaussian_matrix(12);
    c.bench_function("rank/12x12", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("det/12x12", |b| b.iter(|| black_box(&m).det().unwrap()));
    c.bench_function("inverse/12x12", |b| b.iter(|| black_box(&m).inverse().unwrap()));
    c.bench_function("mul/12x12", |b| b.iter(|| black_box(&m) * black_box(&m)));
}

fn strata(c: &mut Criterion) {
    let p = secant_point(PSpaceModel::Exc27, 2);
    c.bench_function("rank_of/exc27", |b| b.iter(|| rank_of(black_box(&p)).unwrap()));
    let mut g = c.benchmark_group("stratum_dimension");
    g.sample_size(10);
    for (model, s) in [(PSpaceModel::Exc27, 2), (PSpaceModel::Skew { n: 10 }, 4), (PSpaceModel::Mat { q: 4, p: 5 }, 3)] {
        g.bench_function(format!("{model}/s{s}"), |b| {
            b.iter(|| stratum_dimension(model, s, &mut rng("dim"), DEFAULT_HEIGHT).unwrap())
        });
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduce");
    g.sample_size(20);
    for kind in [CaseKind::Sp { l: 3 }, CaseKind::U { p: 3, q: 3 }, CaseKind::Ostar { d: 6 }] {
        let case = DualPairCase::new(kind, 2).unwrap();
        g.bench_function(kind.to_string(), |b| b.iter(|| reduce(&case, &mut rng("reduce"), DEFAULT_HEIGHT).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, algebra, linear, strata, reduction);
criterion_main!(benches);
