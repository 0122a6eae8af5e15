use criterion::{criterion_group, criterion_main, Criterion};
use exact_arith::{bernoulli_mod_p_with, Exec};

/// Sequential vs parallel mod-p Bernoulli sweep. The two modes produce
/// identical tables (asserted in unit tests); this measures the speedup.
fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("bernoulli_mod_p");
    g.sample_size(10);
    for &p in &[4289u64, 24251] {
        g.bench_function(format!("sequential/{p}"), |b| {
            b.iter(|| bernoulli_mod_p_with(p, Exec::Sequential).unwrap())
        });
        g.bench_function(format!("default/{p}"), |b| {
            b.iter(|| bernoulli_mod_p_with(p, Exec::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
