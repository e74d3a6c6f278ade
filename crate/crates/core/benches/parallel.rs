use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use massforge::grpcore::DEFAULT_CAP;
use massforge::lfdata::tower_census;
use massforge::tame::tame_mass_pairs_with;
use massforge::weyl::{CartanDatum, CartanType};
use massforge::{Exec, MatGroup};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn closure(c: &mut Criterion) {
    let gens = CartanDatum::new(CartanType::F4, 4)
        .unwrap()
        .simple_reflections();
    let mut g = c.benchmark_group("closure_f4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| MatGroup::generate_with(&gens, DEFAULT_CAP, exec).unwrap())
        });
    }
    g.finish();
}

fn pair_sum(c: &mut Criterion) {
    let gens = CartanDatum::new(CartanType::B, 4)
        .unwrap()
        .simple_reflections();
    let w = MatGroup::generate_with(&gens, DEFAULT_CAP, Exec::Sequential).unwrap();
    let mut g = c.benchmark_group("pair_sum_b4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| tame_mass_pairs_with(&w, 7, exec).unwrap())
        });
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("tower_census_3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| tower_census(3, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, closure, pair_sum, census);
criterion_main!(benches);
