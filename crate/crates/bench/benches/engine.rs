use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ldiip_bench::{formula, nested_base, sample_model};
use ldiip_core::knowledge::derivable;
use ldiip_core::model::filtrate;
use ldiip_core::proof::corpus;
use ldiip_core::{check_derivation, decide, AxiomCatalog};
use std::hint::black_box;

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("derivable");
    for depth in [2, 8, 32] {
        let (a, base, goal) = nested_base(depth);
        g.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |bch, _| {
            bch.iter(|| derivable(black_box(&a), black_box(&base), black_box(&goal)))
        });
    }
    g.finish();
}

fn deciding(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide");
    for (name, text) in [
        ("negation-completeness", "([m]a P) | [m]a ~P"),
        ("truthfulness", "([m]a P) -> P"),
        ("monotonicity", "([m]a P) -> [(m, n)]a P"),
        ("idempotency", "b knows m -> (([m]b [m]a P) <-> [m]a P)"),
    ] {
        let f = formula(text);
        g.bench_function(name, |bch| bch.iter(|| decide(black_box(&f), Some(4)).unwrap()));
    }
    g.finish();
}

fn checking(c: &mut Criterion) {
    let catalog = AxiomCatalog::default();
    let entries = corpus();
    c.bench_function("check_derivation/corpus", |bch| {
        bch.iter(|| {
            for e in &entries {
                check_derivation(black_box(&e.derivation), &catalog).unwrap();
            }
        })
    });
}

fn filtering(c: &mut Criterion) {
    let m = sample_model();
    let f = formula("([m]a (P & ~Q)) -> ~[n]b ~P");
    c.bench_function("filtrate/4-states", |bch| bch.iter(|| filtrate(black_box(&m), black_box(&f)).unwrap()));
}

criterion_group!(benches, closure, deciding, checking, filtering);
criterion_main!(benches);
