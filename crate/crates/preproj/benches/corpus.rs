use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use preproj::par;
use preproj::quiver::examples;
use preproj::verify::{corpus, Suite};
use preproj::Rat;
use std::hint::black_box;

fn corpus_bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    for (name, len) in [("a3", 6), ("kronecker", 6)] {
        let q = examples::by_name(name).unwrap();
        for parallel in [false, true] {
            let id = BenchmarkId::new(if parallel { "parallel" } else { "sequential" }, format!("{name}-{len}"));
            g.bench_with_input(id, &q, |b, q| {
                par::set_parallel(parallel);
                b.iter(|| black_box(corpus::<Rat>(q, len, Suite::All, 1)));
            });
        }
    }
    par::set_parallel(true);
    g.finish();
}

criterion_group!(benches, corpus_bench);
criterion_main!(benches);
