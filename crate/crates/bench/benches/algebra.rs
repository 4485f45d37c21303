use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weightk_core::k0::{f_k0, FunctorRegistry};
use weightk_core::komplex::generate::{random_complex, random_contractible, random_equivalence, GenConfig};
use weightk_core::komplex::{find_homotopy, split_contractible, weight_complex, ChainMap};
use weightk_core::motif::{
    class_of, euler_identity_check, motive_complex_of, weight_ss, AtomRegistry, Coefficients, Mode, VarietyExpr,
};
use weightk_core::zmod::smith_normal_form;
use weightk_core::{IntMatrix, Ring};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(-9..=9)).collect()).collect();
    IntMatrix::from_rows(&rows, n)
}

fn zmod(c: &mut Criterion) {
    let mut r = rng();
    for n in [4, 8, 16] {
        let m = random_matrix(&mut r, n);
        c.bench_function(&format!("smith_normal_form/{n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&m))));
    }
}

fn komplex(c: &mut Criterion) {
    let cfg = GenConfig::default();
    c.bench_function("weight_complex/equivalent", |b| {
        let mut r = rng();
        b.iter_batched(|| random_equivalence(&mut r, Ring::Integers, cfg).1, |d| weight_complex(&d), BatchSize::SmallInput)
    });
    c.bench_function("split_contractible", |b| {
        let mut r = rng();
        b.iter_batched(|| random_contractible(&mut r, Ring::Integers, cfg).0, |k| split_contractible(&k), BatchSize::SmallInput)
    });
    c.bench_function("find_homotopy/identity-vs-identity", |b| {
        let mut r = rng();
        b.iter_batched(
            || ChainMap::identity(&random_complex(&mut r, Ring::Integers, GenConfig { max_rank: 3, max_len: 4 })),
            |f| find_homotopy(&f, &f),
            BatchSize::SmallInput,
        )
    });
}

fn k0(c: &mut Criterion) {
    let reg = FunctorRegistry::matrix(Ring::Integers);
    c.bench_function("f_k0/tensor-mod-4", |b| {
        let mut r = rng();
        b.iter_batched(
            || random_complex(&mut r, Ring::Integers, GenConfig::default()),
            |x| f_k0(&x, &reg, "tensor-mod-4"),
            BatchSize::SmallInput,
        )
    });
}

fn motif(c: &mut Criterion) {
    let atoms = AtomRegistry::builtin(2);
    let gm = VarietyExpr::atom("P1").minus(VarietyExpr::copies("pt", 2), 1);
    let e = VarietyExpr::atom("enriques").times(VarietyExpr::atom("P1"));
    c.bench_function("class_of/Gm^3", |b| {
        let x = gm.clone().power(3);
        b.iter(|| class_of(&x, Mode::CompactSupport, &atoms))
    });
    c.bench_function("euler_identity/enriques x P1", |b| b.iter(|| euler_identity_check(&e, &atoms, 0..=6)));
    let n = motive_complex_of(&VarietyExpr::atom("enriques").minus(VarietyExpr::copies("pt", 3), 2), &atoms).unwrap();
    c.bench_function("weight_ss/enriques minus 3 points", |b| b.iter(|| weight_ss(&n, Coefficients::Integral)));
}

criterion_group!(benches, zmod, komplex, k0, motif);
criterion_main!(benches);
