use std::hint::black_box;

use ck_tomo::{
    epsilon, evolution_terms, number_apply, tomogram_characteristic, DualPoint, EvolutionPoint,
    OperatorVariant, QuantumState, RadonOracle, Tomogram, TomographyFrame, Wigner,
};
use ck_tomo_bench::{reference_params, reference_states};
use criterion::{criterion_group, criterion_main, Criterion};

fn closed_forms(c: &mut Criterion) {
    let (p, t) = reference_params();
    c.bench_function("epsilon", |b| b.iter(|| epsilon(black_box(t), &p)));
    let mut group = c.benchmark_group("tomogram_point");
    for (name, state) in reference_states() {
        let tomo = Tomogram::new(state, t, &p).unwrap();
        let frame = TomographyFrame {
            x: 0.4,
            mu: 0.8,
            nu: -0.6,
        };
        group.bench_function(name, |b| b.iter(|| tomo.eval(black_box(&frame)).unwrap()));
    }
    group.finish();
}

fn quadratures(c: &mut Criterion) {
    let (p, t) = reference_params();
    let frame = TomographyFrame {
        x: 0.4,
        mu: 0.8,
        nu: -0.6,
    };
    let mut group = c.benchmark_group("quadrature");
    group.sample_size(20);
    for (name, state) in reference_states() {
        let w = Wigner::new(state, t, &p);
        group.bench_function(format!("wigner_point/{name}"), |b| {
            b.iter(|| w.eval(black_box(0.3), black_box(-0.2)).unwrap())
        });
        let radon = RadonOracle::new(state, t, &p);
        group.bench_function(format!("radon_point/{name}"), |b| {
            b.iter(|| radon.eval(black_box(&frame)).unwrap())
        });
        group.bench_function(format!("characteristic/{name}"), |b| {
            b.iter(|| tomogram_characteristic(state, black_box(0.9), 0.8, -0.6, t, &p).unwrap())
        });
    }
    group.finish();
}

fn residuals(c: &mut Criterion) {
    let (p, t) = reference_params();
    let state = QuantumState::Fock { n: 2 };
    let point = EvolutionPoint::new(0.4, 0.8, -0.6, t);
    c.bench_function("evolution_terms", |b| {
        b.iter(|| evolution_terms(state, black_box(&point), 1e-3, &p).unwrap())
    });
    let dual = DualPoint::new(0.9, 0.8, -0.6, t);
    c.bench_function("number_apply", |b| {
        b.iter(|| number_apply(OperatorVariant::Direct, 2, black_box(&dual), 1e-3, &p).unwrap())
    });
}

criterion_group!(benches, closed_forms, quadratures, residuals);
criterion_main!(benches);
