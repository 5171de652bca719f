use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qcuntz_core::braid::{q_antisymmetric, theta};
use qcuntz_core::qmatrix::{antipode_check, coact, is_cofixed, pairing_welldefined, QMatElement};
use qcuntz_core::uq::{act_word, is_fixed};
use qcuntz_core::{CuntzElement, LieData, UqWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cuntz(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let xs: Vec<CuntzElement> = (0..3).map(|_| CuntzElement::random(3, 3, 4, &mut rng)).collect();
    c.bench_function("cuntz/mul d=3", |b| b.iter(|| xs[0].try_mul(&xs[1]).unwrap().try_mul(&xs[2]).unwrap()));
    c.bench_function("cuntz/compact d=3", |b| b.iter(|| xs[0].try_mul(&xs[1]).unwrap().compact()));
    let t1 = theta(2, 1).unwrap().element;
    let t2 = theta(2, 2).unwrap().element;
    c.bench_function("cuntz/braid relation d=2", |b| {
        b.iter(|| {
            let l = t1.try_mul(&t2).unwrap().try_mul(&t1).unwrap();
            let r = t2.try_mul(&t1).unwrap().try_mul(&t2).unwrap();
            assert!(l.equals(&r));
        })
    });
}

fn symmetry(c: &mut Criterion) {
    let mut group = c.benchmark_group("fixed points");
    for d in 2..=3 {
        let g = LieData::sl(d).unwrap();
        let t = theta(d, 2).unwrap().element;
        let sq = q_antisymmetric(d).unwrap();
        group.bench_with_input(BenchmarkId::new("is_fixed theta2", d), &d, |b, _| b.iter(|| is_fixed(&g, &t).unwrap()));
        group.bench_with_input(BenchmarkId::new("is_cofixed theta2", d), &d, |b, _| b.iter(|| is_cofixed(&t).unwrap()));
        group.bench_with_input(BenchmarkId::new("coact Sq", d), &d, |b, _| b.iter(|| coact(&sq).unwrap()));
        let a = UqWord::new(g.generators().into_iter().take(3).collect());
        group.bench_with_input(BenchmarkId::new("act_word len 3 on theta2", d), &d, |b, _| {
            b.iter(|| act_word(&g, &a, &t).unwrap())
        });
    }
    group.finish();
}

fn quantum_matrices(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let xs: Vec<QMatElement> = (0..2).map(|_| QMatElement::random(3, 3, 3, &mut rng).unwrap()).collect();
    c.bench_function("frt/mul d=3 degree 3", |b| b.iter(|| xs[0].mul(&xs[1]).unwrap()));
    c.bench_function("frt/antipode check d=3", |b| b.iter(|| antipode_check(3).unwrap()));
    let mut group = c.benchmark_group("pairing");
    group.sample_size(10);
    group.bench_function("welldefined d=2 len 3", |b| b.iter(|| pairing_welldefined(2, 3).unwrap()));
    group.finish();
}

criterion_group!(benches, cuntz, symmetry, quantum_matrices);
criterion_main!(benches);
