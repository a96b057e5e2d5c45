use criterion::{criterion_group, criterion_main, Criterion};
use ihom_cli::commands::verify_case;
use ihom_cli::corpus;
use ihom_core::engine::{homology, ih_compact};
use ihom_core::{default_pair, Allowability};

fn engine(c: &mut Criterion) {
    for (entry, case) in [("node", "node"), ("torus", "torus-marked"), ("suspended-torus", "suspended-torus")] {
        let doc = corpus::document(entry).unwrap();
        let ctx = doc.case_context(case).unwrap();
        let pp = default_pair(ctx.filtration.n());
        c.bench_function(&format!("ih_compact/{case}"), |b| {
            b.iter(|| ih_compact(&Allowability::new(&ctx.filtration, &ctx.pairing, &pp)).unwrap())
        });
    }
    let doc = corpus::document("suspended-torus").unwrap();
    let x = doc.complex("solid-tori").unwrap();
    c.bench_function("homology/solid-tori", |b| b.iter(|| homology(&x)));
    let sub = x.barycentric().complex;
    c.bench_function("homology/solid-tori-subdivided", |b| b.iter(|| homology(&sub)));
}

fn smallres(c: &mut Criterion) {
    let doc = corpus::document("suspended-torus").unwrap();
    c.bench_function("verify_case/suspended-torus", |b| {
        b.iter(|| verify_case(&doc, "suspended-torus").unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = engine, smallres
}
criterion_main!(benches);
