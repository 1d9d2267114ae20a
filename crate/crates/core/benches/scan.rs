use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use knotgap::polyring::LaurentPoly;
use knotgap::sigma::{ScanMode, SigmaHat, DEFAULT_PRECISION_BITS};

fn scan_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("sigma_hat_scan");
    group.sample_size(10);
    for text in ["2z^2-3z+2", "(z^2-z+1)^3"] {
        let lambda: LaurentPoly = text.parse().unwrap();
        let hat = SigmaHat::new(&[lambda], DEFAULT_PRECISION_BITS).unwrap();
        for (label, mode) in [("sequential", ScanMode::Sequential), ("parallel", ScanMode::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, text), &hat, |b, hat| {
                b.iter(|| hat.scan(black_box(1000..=3000), mode).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, scan_modes);
criterion_main!(benches);
