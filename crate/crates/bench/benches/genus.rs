use std::collections::BTreeSet;
use std::hint::black_box;

use adjunct_bench::{product_fourfold, sextic_i1};
use adjunct_core::adjoint::{i1_lhs, i1_rhs};
use adjunct_core::genus::g_i;
use adjunct_core::hrr::chi_multi;
use adjunct_core::semigroup::closure;
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_chi_multi(c: &mut Criterion) {
    let (v, bundles) = product_fourfold();
    let mut g = c.benchmark_group("chi_multi");
    for k in 1..=4 {
        g.bench_function(format!("arity {k}"), |b| b.iter(|| chi_multi(&v, black_box(&bundles[..k])).unwrap()));
    }
    g.finish();
    c.bench_function("g_1 product", |b| b.iter(|| g_i(&v, 1, black_box(&bundles[..3])).unwrap()));
}

fn bench_difference_formula(c: &mut Criterion) {
    let (v, req) = sextic_i1();
    c.bench_function("difference lhs", |b| b.iter(|| i1_lhs(&v, black_box(&req)).unwrap()));
    c.bench_function("difference rhs", |b| b.iter(|| i1_rhs(&v, black_box(&req)).unwrap()));
}

fn bench_closure(c: &mut Criterion) {
    let s: BTreeSet<u64> = [17, 23, 31].into_iter().collect();
    c.bench_function("closure to 10000", |b| b.iter(|| closure(black_box(&s), 10_000).unwrap()));
}

criterion_group!(benches, bench_chi_multi, bench_difference_formula, bench_closure);
criterion_main!(benches);
