use criterion::{black_box, criterion_group, criterion_main, Criterion};
use thomsq::{adem_normalize, sq_poly, verify_codim11_identity, RingContext, SWPolynomial, SteenrodElement};

fn adem(c: &mut Criterion) {
    let e: SteenrodElement = "Sq3.Sq5.Sq7.Sq2 + Sq1.Sq10.Sq6".parse().unwrap();
    c.bench_function("adem_normalize", |b| b.iter(|| adem_normalize(black_box(&e)).unwrap()));
}

fn squares(c: &mut Criterion) {
    let ctx = RingContext::with_degree_cap(12, false, 32).unwrap();
    let p = SWPolynomial::parse("w7*w5 + w6*w4*w2 + w3^4", ctx).unwrap();
    c.bench_function("sq_poly Sq8 on BO_12", |b| b.iter(|| sq_poly(8, black_box(&p)).unwrap()));
}

fn identity(c: &mut Criterion) {
    c.bench_function("verify_codim11_identity", |b| b.iter(verify_codim11_identity));
}

criterion_group!(benches, adem, squares, identity);
criterion_main!(benches);
