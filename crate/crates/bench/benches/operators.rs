use criterion::{criterion_group, criterion_main, Criterion};

use octaboson::qkernels::{ParamSet, Profile};
use octaboson::{Fock, LatticeFunction, Partition, Rational, Relation};

fn hamiltonian(c: &mut Criterion) {
    let fock = Fock::new(ParamSet::default_for(Profile::Four));
    let f = LatticeFunction::<Rational>::delta(&Partition::new(vec![3, 1, 0]).unwrap());
    c.bench_function("apply_hamiltonian delta 3 1 0", |b| b.iter(|| fock.apply_hamiltonian(&f).unwrap()));
}

fn relations(c: &mut Criterion) {
    let fock = Fock::new(ParamSet::default_for(Profile::Four));
    c.bench_function("sweep com-d1 n=2", |b| {
        b.iter(|| fock.verify_relation_sweep(Relation::D1, 2, 3, 3).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = hamiltonian, relations
}
criterion_main!(benches);
