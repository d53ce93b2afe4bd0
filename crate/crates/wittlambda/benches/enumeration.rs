//! Benchmarks for the data-parallel enumeration cores.
//!
//! The library entry points run on rayon under the default `parallel`
//! feature and sequentially without it; rerun with
//! `--no-default-features` to compare builds. The `primitive_sweep` group
//! compares the rayon and sequential index-sweep drivers inside a single
//! build on an identical workload.

use criterion::{criterion_group, criterion_main, Criterion};

use wittlambda::f1::fan::fixtures;
use wittlambda::par;
use wittlambda::parse::parse_poly;
use wittlambda::poly::Vars;
use wittlambda::ring::RingPresentation;
use wittlambda::scalar::BaseRing;
use wittlambda::verify::{self, VerifyOptions};
use wittlambda::witt::{TruncationSet, WittVector};

fn bench_enumerate_points(c: &mut Criterion) {
    // 390,625 assignments with two relations to evaluate each
    let names: Vec<String> = (1..=8).map(|i| format!("x{i}")).collect();
    let vars = Vars::new(&names);
    let rels = vec![
        parse_poly(&vars, "x1*x2 - x3*x4").unwrap(),
        parse_poly(&vars, "x5^2 - x6").unwrap(),
    ];
    let pres = RingPresentation::new(BaseRing::Int, vars, rels).unwrap();
    let ring = BaseRing::Mod(5);
    let mut g = c.benchmark_group("enumerate_points");
    g.sample_size(10);
    g.bench_function("f5-8vars", |b| {
        b.iter(|| pres.enumerate_points(&ring, 10_000_000).unwrap().len())
    });
    g.finish();
}

fn bench_fan_count(c: &mut Criterion) {
    let fan = fixtures::affine_space(5);
    let mut g = c.benchmark_group("fan_brute_count");
    g.sample_size(10);
    g.bench_function("a5-q13", |b| {
        b.iter(|| fan.count_fq_bruteforce(13, 10_000_000).unwrap())
    });
    g.finish();
}

fn bench_witt_ghost_pairs(c: &mut Criterion) {
    let full = TruncationSet::full(24);
    let ring = BaseRing::Int;
    let u = WittVector::new(
        full.clone(),
        ring.clone(),
        (0..24).map(|i| ring.from_i64((i as i64 * 3 - 7) % 9)).collect(),
    )
    .unwrap();
    let v = WittVector::new(
        full.clone(),
        ring.clone(),
        (0..24).map(|i| ring.from_i64((i as i64 * 5 + 2) % 9 - 4)).collect(),
    )
    .unwrap();
    // warm the universal polynomial memo before measuring
    let _ = u.add(&v).unwrap();
    let _ = u.mul(&v).unwrap();
    let mut g = c.benchmark_group("witt_full24");
    g.sample_size(10);
    g.bench_function("add-mul-ghost", |b| {
        b.iter(|| {
            let s = u.add(&v).unwrap();
            let m = u.mul(&v).unwrap();
            (s.ghost().unwrap(), m.ghost().unwrap())
        })
    });
    g.finish();
}

fn bench_ghost_sweep(c: &mut Criterion) {
    let opts = VerifyOptions::default();
    let mut g = c.benchmark_group("verify_ghost_sweep");
    g.sample_size(10);
    g.bench_function("200-pairs-59265-sets", |b| {
        b.iter(|| {
            let mut r = wittlambda::report::Report::new("bench");
            verify::witt_ghost_sweep(&mut r, &opts);
            assert!(r.ok());
        })
    });
    g.finish();
}

/// Same workload through both index-sweep drivers: count solutions of
/// x^2 + y^2 = 1 over Z/4099 by brute force.
fn bench_primitives(c: &mut Criterion) {
    const P: u64 = 4099;
    let work = |idx: u64| -> Option<u64> {
        let (x, y) = (idx / P, idx % P);
        ((x * x + y * y) % P == 1).then_some(idx)
    };
    let mut g = c.benchmark_group("primitive_sweep");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| par::filter_map_indexed(P * P, work).len())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| par::filter_map_indexed_seq(P * P, work).len())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_enumerate_points,
    bench_fan_count,
    bench_witt_ghost_pairs,
    bench_ghost_sweep,
    bench_primitives
);
criterion_main!(benches);
