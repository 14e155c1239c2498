use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chaincode::counting::{count_lcd_mixed, gauss_binom, sigma};
use chaincode::CountSpec;

fn totals(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_so_total");
    for (q, e, n) in [(3, 2, 3), (3, 3, 3), (3, 4, 2), (5, 5, 4), (3, 6, 6)] {
        let spec = CountSpec::new(q, e, n, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q} e{e} n{n}")), &spec, |b, spec| {
            b.iter(|| black_box(spec).count_so_total().unwrap())
        });
    }
    group.finish();
}

fn primitives(c: &mut Criterion) {
    c.bench_function("gauss_binom 40 20 q=5", |b| b.iter(|| gauss_binom(black_box(40), black_box(20), 5)));
    c.bench_function("sigma 24 12 q=3", |b| b.iter(|| sigma(black_box(24), black_box(12), 3).unwrap()));
    c.bench_function("count_lcd_mixed 8 8 p=3 e=3", |b| b.iter(|| count_lcd_mixed(black_box(8), black_box(8), 3, 3).unwrap()));
}

criterion_group!(benches, totals, primitives);
criterion_main!(benches);
