//! Benchmarks for the pieces with nontrivial asymptotics: the blossom
//! matching, the patch decomposition and the triangulation augmentation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use onepmatch_core::generators::{family, FamilyTag};
use onepmatch_core::matching::{max_matching, Graph};
use onepmatch_core::patches::{build_gamma_s, decompose_patches};
use onepmatch_core::saturation::triangulate;

fn bench_matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_matching");
    for s in [8usize, 16, 32] {
        let inst = family(FamilyTag::G2, s).expect("generate G2");
        let g = Graph::from_drawing(&inst.drawing);
        group.bench_with_input(BenchmarkId::new("g2", g.n), &g, |b, g| {
            b.iter(|| {
                let m = max_matching(g);
                assert_eq!(m.mu, inst.expected_mu);
                m.mu
            })
        });
    }
    group.finish();
}

fn bench_patches(c: &mut Criterion) {
    let mut group = c.benchmark_group("patch_decomposition");
    for s in [8usize, 16, 32] {
        let inst = family(FamilyTag::G6, s).expect("generate G6");
        let d = inst.drawing;
        group.bench_with_input(BenchmarkId::new("g6", d.n()), &d, |b, d| {
            b.iter(|| {
                let gamma = build_gamma_s(d, &inst.witness).unwrap();
                decompose_patches(d, &gamma).unwrap().patches.len()
            })
        });
    }
    group.finish();
}

fn bench_triangulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("triangulate");
    for s in [8usize, 16] {
        let inst = family(FamilyTag::Gamma4, s).expect("generate Gamma4");
        let d = inst.drawing;
        group.bench_with_input(BenchmarkId::new("gamma4", d.n()), &d, |b, d| {
            b.iter(|| triangulate(d).unwrap().edges().len())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_matching, bench_patches, bench_triangulate);
criterion_main!(benches);
