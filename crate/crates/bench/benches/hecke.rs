use criterion::{criterion_group, criterion_main, Criterion};
use hecke_core::bernstein_hecke::verify_presentation;
use hecke_core::catalog::{tasks, Catalog, Task};
use hecke_core::module_repr::principal_series_module;
use std::hint::black_box;

fn products(c: &mut Criterion) {
    let cat = Catalog::default_catalog();
    for name in ["bc1_u3", "c2"] {
        let alg = &cat.case(name).unwrap().alg;
        let mut rng = tasks::rng_for(name, Task::CompareSides);
        let a = tasks::random_element(alg, &mut rng);
        let b = tasks::random_element(alg, &mut rng);
        c.bench_function(&format!("product/{name}"), |bench| bench.iter(|| black_box(&a) * black_box(&b)));
    }
}

fn modules(c: &mut Criterion) {
    let cat = Catalog::default_catalog();
    for name in ["a1_sl2", "a2"] {
        let alg = &cat.case(name).unwrap().alg;
        let mut rng = tasks::rng_for(name, Task::GenericTest);
        let t = tasks::random_point(alg.ctx(), alg.rank(), &mut rng);
        c.bench_function(&format!("principal_series_det/{name}"), |bench| {
            bench.iter(|| principal_series_module(alg, black_box(&t)).unwrap().det_multiplicity())
        });
        let st = alg.steinberg_point().unwrap();
        c.bench_function(&format!("decompose_steinberg/{name}"), |bench| {
            bench.iter(|| principal_series_module(alg, black_box(&st)).unwrap().decompose().unwrap())
        });
    }
}

fn presentation(c: &mut Criterion) {
    let cat = Catalog::default_catalog();
    let alg = &cat.case("a1_sl2").unwrap().alg;
    c.bench_function("verify_presentation/a1_sl2", |bench| bench.iter(|| verify_presentation(black_box(alg), 4)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = products, modules, presentation
}
criterion_main!(benches);
