use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latticeforge_bench::{bmn, tamari};
use latticeforge_core::weak_order::build_permutohedron;

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for n in [4, 5, 6] {
        g.bench_with_input(BenchmarkId::new("permutohedron", n), &n, |b, &n| {
            b.iter(|| build_permutohedron(n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("tamari", n), &n, |b, &n| {
            b.iter(|| tamari(n))
        });
    }
    for (m, n) in [(2, 2), (3, 3)] {
        g.bench_with_input(
            BenchmarkId::new("bmn", format!("{m},{n}")),
            &(m, n),
            |b, &(m, n)| b.iter(|| bmn(m, n)),
        );
    }
    g.finish();
}

fn analyze(c: &mut Criterion) {
    let a6 = tamari(6);
    let p5 = build_permutohedron(5).unwrap();
    c.bench_function("semidistributive/A(6)", |b| {
        b.iter(|| a6.is_semidistributive())
    });
    c.bench_function("bounded/P(5)", |b| b.iter(|| p5.is_bounded()));
}

criterion_group!(benches, build, analyze);
criterion_main!(benches);
