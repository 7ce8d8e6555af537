use criterion::{black_box, criterion_group, criterion_main, Criterion};
use lcskit::fixtures;
use lcskit::{build_graph, holonomy_phi3, incidence_of, lattice, phi_formula, realize, witt, MAX_DEGREE};

fn ranks(c: &mut Criterion) {
    c.bench_function("witt_k64_n5", |b| b.iter(|| witt(black_box(64), black_box(5))));
    let inc = incidence_of(&fixtures::cycle_separated_example());
    c.bench_function("phi_formula_cyclesep_k64", |b| {
        b.iter(|| phi_formula(black_box(&inc), MAX_DEGREE).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("holonomy_phi3");
    for (name, p) in [("braid", fixtures::braid_section()), ("h", fixtures::example_h())] {
        let inc = incidence_of(&p);
        group.bench_function(name, |b| b.iter(|| holonomy_phi3(black_box(&inc), 16).unwrap()));
    }
    group.finish();
}

fn arrangements(c: &mut Criterion) {
    let p = fixtures::cycle_separated_example();
    let g = build_graph(&p);
    let n = p.generators();
    c.bench_function("realize_cyclesep", |b| b.iter(|| realize(black_box(&g), n).unwrap()));
    let arr = realize(&g, n).unwrap();
    c.bench_function("lattice_cyclesep", |b| b.iter(|| lattice(black_box(&arr), false).unwrap()));
}

criterion_group!(benches, ranks, oracle, arrangements);
criterion_main!(benches);
