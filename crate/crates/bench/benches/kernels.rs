use std::hint::black_box;

use bsato_core::bfun::{self, ExponentTuple, TupleF};
use bsato_core::capelli::{self, UeaMatrix};
use bsato_core::genmat;
use bsato_core::{MultiPoly, Space};
use criterion::{criterion_group, criterion_main, Criterion};

fn polynomial(c: &mut Criterion) {
    let space = Space::matrix(4, 3).unwrap();
    let t = TupleF::new(space);
    let f = &t.members[0];
    c.bench_function("minor 3x3 of 4x3", |b| {
        b.iter(|| genmat::minor(black_box(space), &[1, 2, 3]))
    });
    c.bench_function("minor power ^4", |b| b.iter(|| black_box(f).pow(4)));
    let f3 = f.pow(3);
    c.bench_function("minor product deg 12", |b| {
        b.iter(|| black_box(&f3) * black_box(f))
    });
}

fn operators(c: &mut Criterion) {
    let space = Space::matrix(3, 3).unwrap();
    let t = TupleF::new(space);
    let dd = bfun::build_ddual(&t);
    c.bench_function("weyl mul D_partial^2 on 3x3", |b| {
        b.iter(|| black_box(&dd) * black_box(&dd))
    });
    let fa = t.power(&ExponentTuple(vec![3])).unwrap();
    c.bench_function("apply_dd det^3 on 3x3", |b| {
        b.iter(|| bfun::apply_dd(&t, black_box(&fa)))
    });
    let skew = TupleF::new(Space::skew(2).unwrap());
    let g: MultiPoly = skew.power(&ExponentTuple(vec![1, 1, 0, 0, 1])).unwrap();
    c.bench_function("apply_dd mixed tuple on skew(5)", |b| {
        b.iter(|| bfun::apply_dd(&skew, black_box(&g)))
    });
}

fn capelli_kernels(c: &mut Criterion) {
    let tau = UeaMatrix::polarization(Space::matrix(3, 3).unwrap());
    c.bench_function("tau(C) on 3x3 by column-determinant", |b| {
        b.iter(|| capelli::capelli_realized(black_box(&tau)))
    });
    c.bench_function("abstract C for r=3", |b| {
        b.iter(|| capelli::capelli_c(black_box(3)))
    });
}

fn recovery(c: &mut Criterion) {
    let mut group = c.benchmark_group("recover_pf");
    group.sample_size(10);
    for space in [
        Space::matrix(3, 2).unwrap(),
        Space::matrix(4, 3).unwrap(),
        Space::skew(2).unwrap(),
    ] {
        let t = TupleF::new(space);
        let samples = bfun::default_samples(&t);
        group.bench_function(space.to_string(), |b| {
            b.iter(|| bfun::recover_pf(&t, black_box(&samples)))
        });
    }
    group.finish();
}

criterion_group!(benches, polynomial, operators, capelli_kernels, recovery);
criterion_main!(benches);
