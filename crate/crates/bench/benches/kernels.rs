use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use oreforge_bench::{a2, a2_pair, matrix4};
use oreforge_core::abelian::smith_normal_form;
use oreforge_core::builtins;
use oreforge_core::tower::opposite_tower;

fn mul(c: &mut Criterion) {
    let t = a2();
    let (p, q) = a2_pair(&t);
    c.bench_function("a2_mul", |b| b.iter(|| black_box(&p).mul(black_box(&q)).unwrap()));
}

fn snf(c: &mut Criterion) {
    let m = matrix4();
    c.bench_function("snf_4x4", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn opposite(c: &mut Criterion) {
    let usolv = builtins::builtin("usolv2").unwrap().tower;
    let t = a2();
    let (p, _) = a2_pair(&t);
    let op = opposite_tower(&t).unwrap();
    c.bench_function("opposite_tower_usolv2", |b| b.iter(|| opposite_tower(black_box(&usolv)).unwrap()));
    c.bench_function("opposite_apply_a2", |b| b.iter(|| op.apply(black_box(&p)).unwrap()));
}

criterion_group!(kernels, mul, snf, opposite);
criterion_main!(kernels);
