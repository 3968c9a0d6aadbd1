use std::hint::black_box;

use cdawg_cst::Mode;
use cdawg_cst_bench::{corpora, index};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const LEN: usize = 1 << 12;

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for (name, raw) in corpora(LEN) {
        for mode in [Mode::Full, Mode::Lite] {
            group.bench_with_input(BenchmarkId::new(name, mode.name()), &raw, |b, raw| {
                b.iter(|| index(black_box(raw), mode))
            });
        }
    }
    group.finish();
}

fn queries(c: &mut Criterion) {
    let mut group = c.benchmark_group("query");
    for (name, raw) in corpora(LEN) {
        let cst = index(&raw, Mode::Full);
        let n = cst.n();
        // a fixed stride visits ranks spread over the whole range
        let ranks: Vec<usize> = (0..256).map(|k| k * 2654435761 % n + 1).collect();
        group.bench_function(BenchmarkId::new("sa", name), |b| {
            b.iter(|| ranks.iter().map(|&r| cst.sa(r).unwrap()).sum::<usize>())
        });
        group.bench_function(BenchmarkId::new("isa", name), |b| {
            b.iter(|| ranks.iter().map(|&p| cst.isa(p).unwrap()).sum::<usize>())
        });
        group.bench_function(BenchmarkId::new("lca", name), |b| {
            b.iter(|| {
                ranks
                    .windows(2)
                    .map(|w| cst.lca(w[0].min(w[1]), w[0].max(w[1])).unwrap().depth)
                    .sum::<usize>()
            })
        });
        group.bench_function(BenchmarkId::new("extract64", name), |b| {
            b.iter(|| ranks.iter().map(|&p| cst.extract(p.min(n - 63), p.min(n - 63) + 63).unwrap().len()).sum::<usize>())
        });
        group.bench_function(BenchmarkId::new("suffix_link", name), |b| {
            b.iter(|| {
                ranks
                    .iter()
                    .filter_map(|&r| cst.parent(cst.select_leaf(r).unwrap()).unwrap())
                    .filter_map(|v| cst.suffix_link(v).unwrap())
                    .count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, construction, queries);
criterion_main!(benches);
