//! Rayon kernels against their sequential twins.
//!
//! Run with the default features to get both columns; with
//! `--no-default-features` only the sequential side is measured.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ccs_core::chirotope::enumerate_systems_seq;
use ccs_core::convexity::{chain_dp_max_size_seq, lex_min_convex_of_size_seq};
use ccs_core::gen_realizable;

fn bench_enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_n5");
    g.bench_function("seq", |b| {
        b.iter(|| black_box(enumerate_systems_seq(black_box(5)).unwrap().len()))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("par", |b| {
        use ccs_core::chirotope::enumerate_systems_par;
        b.iter(|| black_box(enumerate_systems_par(black_box(5)).unwrap().len()))
    });
    g.finish();
}

fn bench_search(c: &mut Criterion) {
    let cfg = gen_realizable(16, 2024).unwrap();
    let mut g = c.benchmark_group("largest_convex_subset_n16");
    g.sample_size(20);
    g.bench_function("dp_seq", |b| {
        b.iter(|| black_box(chain_dp_max_size_seq(black_box(&cfg))))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("dp_par", |b| {
        use ccs_core::convexity::chain_dp_max_size;
        b.iter(|| black_box(chain_dp_max_size(black_box(&cfg))))
    });
    let target = chain_dp_max_size_seq(&cfg);
    g.bench_function("extract_seq", |b| {
        b.iter(|| black_box(lex_min_convex_of_size_seq(black_box(&cfg), target)))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("extract_par", |b| {
        use ccs_core::convexity::lex_min_convex_of_size;
        b.iter(|| black_box(lex_min_convex_of_size(black_box(&cfg), target)))
    });
    g.finish();
}

fn bench_clustering(c: &mut Criterion) {
    use ccs_core::{find_clustering, ClusteringStrategy};
    let cfg = gen_realizable(32, 7).unwrap();
    let mut g = c.benchmark_group("clustering_n32_k4");
    g.sample_size(10);
    g.bench_function("exhaustive", |b| {
        b.iter(|| {
            black_box(
                find_clustering(black_box(&cfg), 4, ClusteringStrategy::Exhaustive)
                    .unwrap()
                    .product,
            )
        })
    });
    g.bench_function("sampled", |b| {
        b.iter(|| {
            black_box(
                find_clustering(
                    black_box(&cfg),
                    4,
                    ClusteringStrategy::Sampled {
                        samples: Some(400),
                        seed: 1,
                    },
                )
                .unwrap()
                .product,
            )
        })
    });
    g.finish();
}

criterion_group!(benches, bench_enumerate, bench_search, bench_clustering);
criterion_main!(benches);
