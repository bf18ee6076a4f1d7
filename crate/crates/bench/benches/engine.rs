use criterion::{criterion_group, criterion_main, Criterion};
use wreath_bench::group;
use wreath_core::{
    compute_nucleus, equivalence_class, BoundaryPoint, NucleusBounds, NucleusDiagram,
};

fn word_problem(c: &mut Criterion) {
    let g = group("aleshin");
    let w = g.parse_word("(a b^-1 c)^4").unwrap();
    c.bench_function("canonicalize/aleshin/12", |b| {
        b.iter(|| g.canonicalize(&w).unwrap())
    });
}

fn nucleus(c: &mut Criterion) {
    for key in ["basilica", "virtually_z3"] {
        let g = group(key);
        c.bench_function(&format!("nucleus/{key}"), |b| {
            b.iter(|| compute_nucleus(&g, NucleusBounds::default()))
        });
    }
}

fn equivalence(c: &mut Criterion) {
    let g = group("basilica");
    let d = NucleusDiagram::from_result(&compute_nucleus(&g, NucleusBounds::default())).unwrap();
    let p: BoundaryPoint = "01^w 0".parse().unwrap();
    c.bench_function("class/basilica", |b| {
        b.iter(|| equivalence_class(&d, &p).unwrap())
    });
}

criterion_group!(benches, word_problem, nucleus, equivalence);
criterion_main!(benches);
