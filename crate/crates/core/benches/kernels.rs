//! Benchmarks for the expansion-heavy kernels. Run with the default
//! features for the rayon path and with `--no-default-features` for the
//! sequential fallback; the results are directly comparable because both
//! paths produce identical output.

use criterion::{criterion_group, criterion_main, Criterion};

use symq_core::freealg::{sym_k, Ctx, NCPoly};
use symq_core::identities::{verify_lemma1, verify_pc2, wick_product, wick_system};
use symq_core::scalar::ratio;

fn gens(ctx: Ctx) -> Vec<NCPoly> {
    (0..ctx.ngens).map(|i| NCPoly::generator(ctx, i).unwrap()).collect()
}

fn bench_sym_k(c: &mut Criterion) {
    let ctx = Ctx::new(8, 0);
    let g = gens(ctx);
    c.bench_function("sym_k distinct k=8", |b| {
        b.iter(|| sym_k(&g).unwrap());
    });
}

fn bench_lemma1(c: &mut Criterion) {
    c.bench_function("verify_lemma1 k=5", |b| {
        b.iter(|| assert!(verify_lemma1(5).unwrap().holds));
    });
}

fn bench_pc2(c: &mut Criterion) {
    c.bench_function("verify_pc2 k=4", |b| {
        b.iter(|| assert!(verify_pc2(4).unwrap().holds));
    });
}

fn bench_wick_oracle(c: &mut Criterion) {
    let d: Vec<Vec<_>> = (0..4)
        .map(|i| (0..4).map(|j| ratio(i as i64 - j as i64, 2)).collect())
        .collect();
    let rel = wick_system(4, 4, &d).unwrap();
    let g = gens(rel.word_ctx());
    c.bench_function("wick l=m=4 formula vs rewriting", |b| {
        b.iter(|| {
            let formula = wick_product(4, 4, &d).unwrap();
            let syml = sym_k(&g[..4]).unwrap();
            let symm = sym_k(&g[4..]).unwrap();
            let direct = rel.normal_form(&syml.mul(&symm).unwrap()).unwrap();
            assert_eq!(direct, rel.normal_form(&formula).unwrap());
        });
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = bench_sym_k, bench_lemma1, bench_pc2, bench_wick_oracle
}
criterion_main!(kernels);
