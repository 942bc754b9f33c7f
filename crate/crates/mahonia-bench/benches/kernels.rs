//! Benchmarks for the hot kernels: avoider enumeration, the one-pass
//! statistic evaluator, distribution computation, the equidistribution
//! scanner, the bijections and the q-series recursions.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use mahonia::cache::DistCache;
use mahonia::dyck::{gamma, gamma_inv};
use mahonia::bij::phi_321;
use mahonia::pattern::enumerate_avoiders;
use mahonia::qseries::{carlitz_riordan, cf_truncate, cfrak1, genfunc_312, CrVariant, GenfuncAlpha};
use mahonia::stats::{catalog_names, distribution, CompiledStat, StatSpec, TriCounts};
use mahonia::verify::{s3_singletons, scan_equidistributions};
use mahonia::VincularPattern;

fn class(lit: &str) -> Vec<VincularPattern> {
    vec![lit.parse().expect("classical literal")]
}

fn bench_enumeration(c: &mut Criterion) {
    let avoid231 = class("231");
    c.bench_function("enumerate S_10(231)", |b| {
        b.iter(|| enumerate_avoiders(black_box(10), &avoid231).count())
    });
    c.bench_function("enumerate S_8", |b| {
        b.iter(|| enumerate_avoiders(black_box(8), &[]).count())
    });
}

fn bench_statistics(c: &mut Criterion) {
    let specs: Vec<StatSpec> = catalog_names()
        .iter()
        .map(|n| StatSpec::named(n).expect("catalog"))
        .collect();
    let sigmas: Vec<_> = enumerate_avoiders(8, &class("132")).collect();
    c.bench_function("all catalog stats over S_8(132), one pass", |b| {
        b.iter(|| {
            let compiled: Vec<CompiledStat> = specs.iter().map(CompiledStat::new).collect();
            let mut acc = 0i64;
            for sigma in &sigmas {
                let counts = TriCounts::compute(sigma.values());
                for stat in &compiled {
                    acc += stat.eval_with_counts(&counts, sigma);
                }
            }
            acc
        })
    });
    c.bench_function("distribution maj over S_9(231)", |b| {
        b.iter(|| distribution(&specs[0], &class("231"), black_box(9)).unwrap())
    });
}

fn bench_scanner(c: &mut Criterion) {
    let names = catalog_names();
    let patterns = s3_singletons();
    c.bench_function("scan 14 stats x S_3 singletons, max-n 6", |b| {
        b.iter(|| {
            let cache = DistCache::in_memory();
            scan_equidistributions(&cache, black_box(names), &patterns, 6).unwrap()
        })
    });
}

fn bench_bijections(c: &mut Criterion) {
    let sigmas: Vec<_> = enumerate_avoiders(9, &class("321")).collect();
    c.bench_function("phi_321 over S_9(321)", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for sigma in &sigmas {
                acc += phi_321(sigma).unwrap().n();
            }
            acc
        })
    });
    c.bench_function("gamma round trip over S_9(321)", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for sigma in &sigmas {
                acc += gamma_inv(&gamma(sigma).unwrap()).n();
            }
            acc
        })
    });
}

fn bench_qseries(c: &mut Criterion) {
    c.bench_function("carlitz-riordan C_16", |b| {
        b.iter(|| carlitz_riordan(black_box(16), CrVariant::C))
    });
    c.bench_function("cf truncation to order 12", |b| {
        b.iter(|| cf_truncate(&cfrak1(), black_box(12)))
    });
    let alpha = GenfuncAlpha::from_stat(&StatSpec::named("maj").unwrap()).unwrap();
    c.bench_function("genfunc recursion n = 9", |b| {
        b.iter(|| genfunc_312(&alpha, black_box(9)))
    });
}

criterion_group!(
    kernels,
    bench_enumeration,
    bench_statistics,
    bench_scanner,
    bench_bijections,
    bench_qseries
);
criterion_main!(kernels);
