//! Corpus sweep under both execution policies.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use grex::corpus::{run_corpus, CorpusConfig};
use grex::par::Exec;

fn sweep(c: &mut Criterion) {
    let cfg = CorpusConfig { max_vertices: 2, max_arrows: 3, sample: Some(120), seed: 7, ..CorpusConfig::default() };
    let mut group = c.benchmark_group("corpus_sweep");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                let report = run_corpus(&cfg, exec).expect("corpus sweep");
                assert_eq!(report.counterexamples(), 0);
                report
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
