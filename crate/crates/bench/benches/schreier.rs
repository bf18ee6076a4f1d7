use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wreath_bench::fixture;
use wreath_core::{build_schreier, spectrum, ExportGraph, Format, SchreierLimits};

fn levels(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_schreier");
    for key in ["basilica", "aleshin", "grigorchuk"] {
        let (aut, gens) = fixture(key);
        for n in [10, 14, 16] {
            group.bench_with_input(BenchmarkId::new(key, n), &n, |b, &n| {
                b.iter(|| build_schreier(&aut, &gens, n, SchreierLimits::default()).unwrap())
            });
        }
    }
    group.finish();
}

fn components(c: &mut Criterion) {
    let (aut, gens) = fixture("basilica");
    let g = build_schreier(&aut, &gens, 16, SchreierLimits::default()).unwrap();
    c.bench_function("components/basilica/16", |b| {
        b.iter(|| g.connected_components())
    });
}

fn export(c: &mut Criterion) {
    let (aut, gens) = fixture("basilica");
    let g = build_schreier(&aut, &gens, 12, SchreierLimits::default()).unwrap();
    let view = ExportGraph::from_labeled(&g);
    for format in [Format::Dot, Format::Edges] {
        c.bench_function(&format!("export/basilica/12/{format:?}"), |b| {
            b.iter(|| view.render(format))
        });
    }
}

fn walk_spectrum(c: &mut Criterion) {
    let (aut, gens) = fixture("basilica");
    let g = build_schreier(&aut, &gens, 8, SchreierLimits::default()).unwrap();
    c.bench_function("spectrum/basilica/8", |b| b.iter(|| spectrum(&g).unwrap()));
}

criterion_group!(benches, levels, components, export, walk_spectrum);
criterion_main!(benches);
