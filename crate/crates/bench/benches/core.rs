use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use mucheck_bench::{cycle, equality, forall_template, sentences, templates, two_point};
use mucheck_core::classifier::{classify, TemplatePair};
use mucheck_core::eval::{find_witnesses, holds, np_algorithm, Assignment};
use mucheck_core::homomorphisms::{enumerate_muhoms, enumerate_smuhoms, smuhom_profile};
use mucheck_core::logic::Fragment;
use mucheck_core::reductions::{equality_pspace_gadget, muhom_formula, smuhom_formula, Limits};

fn evaluation(c: &mut Criterion) {
    let (f, sf) = two_point();
    let mut g = c.benchmark_group("evaluation");
    for k in [2, 4, 8] {
        let s = equality(k);
        g.bench_with_input(BenchmarkId::new("holds", k), &s, |b, s| {
            b.iter(|| holds(s, black_box(&f)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("witnesses", k), &s, |b, s| {
            b.iter(|| find_witnesses(s, black_box(&sf), &Assignment::new()).unwrap())
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    for k in [3, 4] {
        let (a, b) = (cycle(k), cycle(k));
        g.bench_function(BenchmarkId::new("muhoms/cycle", k), |bn| {
            bn.iter(|| enumerate_muhoms(&a, &b).unwrap())
        });
        g.bench_function(BenchmarkId::new("smuhoms/equality", k), |bn| {
            let e = equality(k);
            bn.iter(|| enumerate_smuhoms(&e, &e).unwrap())
        });
    }
    for (name, t) in templates() {
        g.bench_function(BenchmarkId::new("profile", name), |bn| {
            bn.iter(|| smuhom_profile(t.a(), t.b()).unwrap())
        });
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    for (name, t) in templates() {
        for l in [Fragment::EAO, Fragment::EFAO] {
            g.bench_function(BenchmarkId::new(name, l.cli_name().unwrap()), |bn| {
                // A fresh pair each time so the cached profile is rebuilt.
                bn.iter(|| {
                    let t = TemplatePair::new(t.a().clone(), t.b().clone()).unwrap();
                    classify(&t, l).unwrap()
                })
            });
        }
    }
    g.finish();
}

fn algorithms(c: &mut Criterion) {
    let t = forall_template();
    let a_star = t.profile().unwrap().has_forall.map(|w| w.a_star);
    let sentences = sentences();
    if let Some(a_star) = a_star {
        c.bench_function("np-algorithm/forall-template", |bn| {
            bn.iter(|| {
                for sf in &sentences {
                    black_box(np_algorithm(&t, a_star, sf).unwrap());
                }
            })
        });
    }
    c.bench_function("reference/forall-template", |bn| {
        bn.iter(|| {
            for sf in &sentences {
                black_box(holds(t.a(), &sf.to_formula()).unwrap());
            }
        })
    });
}

fn gadgets(c: &mut Criterion) {
    let mut g = c.benchmark_group("gadgets");
    let limits = Limits::default();
    let a = cycle(3);
    g.bench_function("muhom/n=2", |b| {
        b.iter(|| muhom_formula(&a, 2, &limits).unwrap())
    });
    for m in [2, 3, 4] {
        g.bench_function(BenchmarkId::new("smuhom", m), |b| {
            b.iter(|| smuhom_formula(&a, 1, m, &limits).unwrap())
        });
    }
    let (_, sf) = two_point();
    g.bench_function("eq-pspace/two-point", |b| {
        b.iter(|| equality_pspace_gadget(&sf, 3, &limits).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    evaluation,
    enumeration,
    classification,
    algorithms,
    gadgets
);
criterion_main!(benches);
