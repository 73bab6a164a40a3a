use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use charcalc::blowup::{verify_per_ob, ArrangementRing, GoodFamily};
use charcalc::chern::{annihilate_schedule, apply_schedule, formal_schedule_context, ScheduleMode};
use charcalc::symfunc::Partition;
use charcalc::{kappa_bruteforce, kappa_formula, multinom_mod_p, steenrod_total_on_class};

fn bench_kappa(c: &mut Criterion) {
    let mut group = c.benchmark_group("kappa");
    for degree in [4u64, 6, 8] {
        let part = Partition::uniform(2, degree / 2);
        group.bench_with_input(BenchmarkId::new("closed-form", degree), &part, |b, p| {
            b.iter(|| kappa_formula(black_box(p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("brute-force", degree), &part, |b, p| {
            b.iter(|| kappa_bruteforce(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn bench_modular_multinomials(c: &mut Criterion) {
    c.bench_function("multinom_mod_p sweep", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for n in 1..60u64 {
                let v = multinom_mod_p(2 * n + 3, &[n, n / 2, 3], black_box(5)).unwrap();
                acc = acc.wrapping_add(v);
            }
            acc
        })
    });
}

fn bench_steenrod_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("steenrod_total");
    for (p, degree) in [(2u64, 6u64), (3, 6), (5, 8)] {
        let part = Partition::uniform(2, degree / 2);
        group.bench_function(BenchmarkId::new(format!("p{p}"), degree), |b| {
            b.iter(|| steenrod_total_on_class(black_box(&part), p, Some(degree + 3 * (p - 1))))
        });
    }
    group.finish();
}

fn bench_blowup_sweep(c: &mut Criterion) {
    let ring = ArrangementRing::new(3);
    let families = GoodFamily::enumerate_all(3);
    c.bench_function("per-ob identity sweep N=3", |b| {
        b.iter(|| {
            for u in &families {
                for w in &families {
                    assert!(verify_per_ob(black_box(u), black_box(w), &ring).unwrap().pass());
                }
            }
        })
    });
}

fn bench_schedule(c: &mut Criterion) {
    let (r, p, m, dim) = (2u64, 3u64, 1u32, 5u64);
    let schedule = annihilate_schedule(r, p, m, dim, ScheduleMode::Full).unwrap();
    let (_, v, ideal) = formal_schedule_context(r, p, m, dim).unwrap();
    c.bench_function("apply full schedule r=2 p=3 D=5", |b| {
        b.iter(|| apply_schedule(black_box(&v), &schedule, &ideal).unwrap())
    });
}

criterion_group!(
    benches,
    bench_kappa,
    bench_modular_multinomials,
    bench_steenrod_expansion,
    bench_blowup_sweep,
    bench_schedule
);
criterion_main!(benches);
