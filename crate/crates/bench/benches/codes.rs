use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use twistgrs::bkt::BktTable;
use twistgrs::codes::grs;
use twistgrs::galois::Field;
use twistgrs::search::{alg1_search, Algorithm, Candidate};

fn gf(p: u32, m: u32) -> Arc<Field> {
    Arc::new(Field::new(p, m).unwrap())
}

fn field_tables(c: &mut Criterion) {
    c.bench_function("field GF(3^5)", |b| {
        b.iter(|| Field::new(black_box(3), 5).unwrap())
    });
}

fn profile(c: &mut Criterion) {
    let f = gf(5, 3);
    let cand = Candidate::new(&f, Algorithm::Alg1, &[1]).unwrap();
    c.bench_function("dimension profile GF(125) coset 1", |b| {
        b.iter(|| cand.dimension_profile(black_box(99)))
    });
}

fn explicit(c: &mut Criterion) {
    let f = gf(5, 3);
    let cand = Candidate::new(&f, Algorithm::Alg1, &[31, 32]).unwrap();
    let spec = cand.grs_spec(33).unwrap();
    c.bench_function("GRS GF(125) n=99 k=33", |b| {
        b.iter(|| grs(black_box(&spec)))
    });
    c.bench_function("trace dual GF(125) n=99 k=33", |b| {
        b.iter(|| cand.code(black_box(33)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let f = gf(5, 3);
    let table = BktTable::empty(5);
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("alg1 GF(125) one coset", |b| {
        b.iter(|| alg1_search(&f, 1, 1, None, &table).unwrap())
    });
    group.finish();
}

criterion_group!(benches, field_tables, profile, explicit, search);
criterion_main!(benches);
