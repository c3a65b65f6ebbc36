use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use uqint::hkl::Hkl;
use uqint::mcg::McgGenerator;
use uqint::schroedinger::Schroedinger;
use uqint::uqsl2::SmallQuantumGroup;
use uqint::{BasisLabel, CycContext};

fn ctx(r: u32) -> CycContext {
    CycContext::new(r).unwrap()
}

fn pbw_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("pbw-mul");
    for r in [3, 5, 7] {
        let u = SmallQuantumGroup::new(ctx(r));
        let n = u.dim();
        let xs: Vec<_> = (0..n).step_by(n / 16).map(|i| u.monomial(u.pbw(i))).collect();
        group.bench_with_input(BenchmarkId::from_parameter(r), &xs, |b, xs| {
            b.iter(|| {
                for x in xs {
                    for y in xs {
                        black_box(u.mul(x, y));
                    }
                }
            })
        });
    }
    group.finish();
}

fn psi_in_vprime(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi-vprime");
    for (r, g) in [(5, 1), (11, 1), (5, 2)] {
        let s = Schroedinger::new(ctx(r), g);
        let gen = McgGenerator::all(g)[1];
        group.bench_function(format!("r{r}-g{g}"), |b| {
            b.iter(|| black_box(s.psi_matrix(gen, BasisLabel::VPrime).unwrap()))
        });
    }
    group.finish();
}

fn hkl_generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("hkl-e1primef");
    group.sample_size(10);
    let h = Hkl::new(SmallQuantumGroup::shared(ctx(3)), 2);
    for gen in McgGenerator::all(2) {
        group.bench_function(gen.to_string(), |b| {
            b.iter(|| black_box(h.generator(gen, BasisLabel::E1PrimeF).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, pbw_products, psi_in_vprime, hkl_generators);
criterion_main!(benches);
