use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polycyclic::algebra::{FieldCtx, FieldElement, FieldPoly};
use polycyclic::oracle::{self, Prop, SweepGrid};
use polycyclic::quotient::RingCtx;
use polycyclic::Exec;

fn ring(p: u64, t: usize, s: u32) -> Arc<RingCtx> {
    let f = FieldCtx::new(p, 1, None).unwrap();
    let xm1 = FieldPoly::new(vec![f.from_int(-1), FieldElement::ONE]);
    RingCtx::special(f, t, &xm1, s).unwrap()
}

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_ideals");
    g.sample_size(10);
    for (p, t, s) in [(2, 4, 1), (3, 2, 1), (2, 2, 2)] {
        let ctx = ring(p, t, s);
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, format!("p{p}_t{t}_s{s}")), &ctx, |b, ctx| {
                b.iter(|| oracle::enumerate_ideals(ctx, 1 << 16, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    let ctx = ring(2, 4, 1);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| b.iter(|| oracle::census(&ctx, 1 << 16, exec).unwrap()));
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("param_sweep");
    g.sample_size(10);
    let ctx = ring(2, 4, 2);
    for (name, exec) in POLICIES {
        g.bench_function(format!("4.3/{name}"), |b| {
            b.iter(|| oracle::param_sweep(Prop::P43, &ctx, SweepGrid::default(), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, census, sweep);
criterion_main!(benches);
