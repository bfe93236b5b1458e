use std::hint::black_box;

use cbent_core::analysis::{c_ddt, do_theorem_check, is_bent1, is_bent2, is_perfect1, is_perfect2};
use cbent_core::families::gold;
use cbent_core::spectra::{walsh1_spectrum, walsh2_spectrum};
use cbent_core::{FieldCtx, FieldElem, FnTable, Method};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn field_ops(c: &mut Criterion) {
    let k = FieldCtx::parse("3^4").unwrap();
    let elems: Vec<FieldElem> = k.elements().collect();
    c.bench_function("gf81 mul all pairs", |b| {
        b.iter(|| {
            let mut acc = FieldElem::ZERO;
            for &x in &elems {
                for &y in &elems {
                    acc = k.add(acc, k.mul(x, y));
                }
            }
            black_box(acc)
        })
    });
}

fn ddt(c: &mut Criterion) {
    let mut g = c.benchmark_group("c_ddt");
    for s in ["2^6", "3^4", "2^8"] {
        let k = FieldCtx::parse(s).unwrap();
        let f = FnTable::monomial(k.clone(), 5);
        g.bench_with_input(BenchmarkId::from_parameter(s), &f, |b, f| {
            b.iter(|| c_ddt(f, FieldElem(2)))
        });
    }
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let f = gold(&FieldCtx::parse("2^5").unwrap(), 1).unwrap();
    c.bench_function("walsh1 spectrum gf32", |b| {
        b.iter(|| walsh1_spectrum(black_box(&f)).unwrap())
    });
    c.bench_function("walsh2 spectrum gf32", |b| {
        b.iter(|| walsh2_spectrum(black_box(&f)).unwrap())
    });
}

fn predicates(c: &mut Criterion) {
    let k = FieldCtx::parse("3^4").unwrap();
    let f = FnTable::monomial(k, 21);
    let cc = FieldElem(0);
    let mut g = c.benchmark_group("x^21 on gf81");
    g.sample_size(10);
    g.bench_function("perfect1 definition", |b| {
        b.iter(|| is_perfect1(&f, cc, false, Method::Definition))
    });
    g.bench_function("perfect1 balance", |b| {
        b.iter(|| is_perfect1(&f, cc, false, Method::Balance))
    });
    g.bench_function("bent1", |b| b.iter(|| is_bent1(&f, cc)));
    g.bench_function("perfect2 definition", |b| {
        b.iter(|| is_perfect2(&f, cc, false, Method::Definition))
    });
    g.bench_function("perfect2 profile", |b| {
        b.iter(|| is_perfect2(&f, cc, false, Method::Profile))
    });
    g.bench_function("bent2", |b| b.iter(|| is_bent2(&f, cc)));
    g.finish();
}

fn do_check(c: &mut Criterion) {
    let f = FnTable::monomial(FieldCtx::parse("3^3").unwrap(), 4);
    c.bench_function("do_theorem_check x^4 gf27", |b| {
        b.iter(|| do_theorem_check(&f, FieldElem(2)).unwrap())
    });
}

criterion_group!(benches, field_ops, ddt, spectra, predicates, do_check);
criterion_main!(benches);
