//! Parallel vs sequential comparison for the enumeration core and the batch
//! prime classifier. Run with `cargo bench -p circulant`; build with
//! `--no-default-features` to measure the pure sequential build instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use circulant::goodbad::classify_prime;
use circulant::search::{enumerate_values, enumerate_values_seq};

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_values");
    group.sample_size(10);
    for n in [9u64, 11] {
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| {
                let mut sink = Vec::new();
                enumerate_values(n, 1, &mut sink).unwrap();
                sink.len()
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| {
                let mut sink = Vec::new();
                enumerate_values_seq(n, 1, &mut sink).unwrap();
                sink.len()
            })
        });
    }
    group.finish();
}

fn bench_classification(c: &mut Criterion) {
    let primes: Vec<u64> = vec![31, 61, 151, 181, 211, 241, 271, 331, 421, 541];
    let mut group = c.benchmark_group("classify_prime_batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                primes.par_iter().map(|&p| classify_prime(p).unwrap()).count()
            }
            #[cfg(not(feature = "parallel"))]
            {
                primes.iter().map(|&p| classify_prime(p).unwrap()).count()
            }
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| primes.iter().map(|&p| classify_prime(p).unwrap()).count())
    });
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_classification);
criterion_main!(benches);
