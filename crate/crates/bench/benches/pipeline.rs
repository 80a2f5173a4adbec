use std::hint::black_box;

use conic_bench::{rank_one, reducible};
use conic_core::{
    betti_from_polytope, face_lattice, reduce_polytope, transform_general, transform_r1, MarkedPolytope,
    MarkingPolicy,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn canonical_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonicalize");
    for dim in 2..=4 {
        let raws: Vec<_> = rank_one(dim, 8).iter().map(|i| i.polytope.raw_hrep()).collect();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &raws, |b, raws| {
            b.iter(|| {
                for h in raws {
                    black_box(MarkedPolytope::from_hrep(h, None, false).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn faces(c: &mut Criterion) {
    let mut group = c.benchmark_group("face_lattice");
    for dim in 2..=4 {
        let ps: Vec<_> = rank_one(dim, 8).into_iter().map(|i| i.polytope).collect();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &ps, |b, ps| {
            b.iter(|| {
                for p in ps {
                    black_box(face_lattice(p));
                    black_box(betti_from_polytope(p).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn rank_one_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("transform_r1");
    for dim in 1..=3 {
        let instances = rank_one(dim, 8);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &instances, |b, instances| {
            b.iter(|| {
                for i in instances {
                    black_box(transform_r1(&i.polytope.hrep(), &i.action, MarkingPolicy::Auto).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn general_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("transform_general");
    for r in 2..=3 {
        let instances = reducible(r, 6);
        group.bench_with_input(BenchmarkId::new("reduce", r), &instances, |b, instances| {
            b.iter(|| {
                for i in instances {
                    black_box(reduce_polytope(&i.polytope, &i.action).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("transform", r), &instances, |b, instances| {
            b.iter(|| {
                for i in instances {
                    black_box(transform_general(&i.polytope, &i.action, MarkingPolicy::Auto).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = canonical_form, faces, rank_one_transform, general_transform
}
criterion_main!(benches);
