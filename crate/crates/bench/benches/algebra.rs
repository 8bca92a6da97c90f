use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use singmon::brauer::{all_brauer, all_brauer_b};
use singmon::hecke::HeckeAlgebra;
use singmon::sl2cat::{compose, minimize, shuffle_complex, theta_check};
use singmon::verify::{enumerate_target, Target, DEFAULT_CAP};
use singmon::CoxeterType;

fn closure(c: &mut Criterion) {
    c.bench_function("closure br n=5", |b| {
        b.iter(|| enumerate_target(black_box(Target::Br), 5, DEFAULT_CAP).unwrap())
    });
    c.bench_function("closure sis n=3", |b| {
        b.iter(|| enumerate_target(black_box(Target::Sis), 3, DEFAULT_CAP).unwrap())
    });
}

fn kazhdan_lusztig(c: &mut Criterion) {
    for kind in [CoxeterType::A(4), CoxeterType::B(3)] {
        c.bench_function(&format!("kl basis {kind}"), |b| {
            b.iter(|| {
                let h = HeckeAlgebra::new(kind);
                for w in h.elements() {
                    black_box(h.kl_elt(w).unwrap());
                }
            })
        });
    }
}

fn brauer_mul(c: &mut Criterion) {
    let br = all_brauer(4);
    c.bench_function("brauer mul n=4 all pairs", |b| {
        b.iter(|| {
            for x in &br {
                for y in &br {
                    black_box(x.mul(y).unwrap());
                }
            }
        })
    });
    let brb = all_brauer_b(2);
    c.bench_function("brauer-b mul n=2 all pairs", |b| {
        b.iter(|| {
            for x in &brb {
                for y in &brb {
                    black_box(x.mul(y).unwrap());
                }
            }
        })
    });
}

fn sl2(c: &mut Criterion) {
    c.bench_function("sl2 minimize shuffle composite", |b| {
        b.iter(|| {
            let total = compose(&shuffle_complex(), &theta_check()).unwrap();
            black_box(minimize(&total))
        })
    });
}

criterion_group!(benches, closure, kazhdan_lusztig, brauer_mul, sl2);
criterion_main!(benches);
