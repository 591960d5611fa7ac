//! Criterion timings for compression and decompression over the three
//! generated corpus families. Run with `cargo bench -p gcis-bench`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use gcis::corpus::{gen_fibonacci, gen_random, gen_thue_morse};

fn corpora() -> Vec<(&'static str, Vec<u8>)> {
    vec![
        ("fib-k25", gen_fibonacci(25).unwrap()),
        ("tm-128k", gen_thue_morse(1 << 17).unwrap()),
        ("rand-128k", gen_random(1 << 17, 256, 42).unwrap()),
    ]
}

fn bench_compress(c: &mut Criterion) {
    let mut group = c.benchmark_group("compress");
    group.sample_size(20);
    for (label, data) in corpora() {
        group.throughput(Throughput::Bytes(data.len() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(label), &data, |b, data| {
            b.iter(|| gcis::compress(data));
        });
    }
    group.finish();
}

fn bench_decompress(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompress");
    group.sample_size(20);
    for (label, data) in corpora() {
        let archive = gcis::compress(&data);
        group.throughput(Throughput::Bytes(data.len() as u64));
        group.bench_with_input(
            BenchmarkId::from_parameter(label),
            &archive,
            |b, archive| {
                b.iter(|| gcis::decompress(archive).unwrap());
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_compress, bench_decompress);
criterion_main!(benches);
