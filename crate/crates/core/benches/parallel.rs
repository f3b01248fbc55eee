use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use spidersq_core::greimas::{self, corner, m_witness, meta_term_premise, Corner, MetaTerm};
use spidersq_core::semantics::{count_models_with, entails_with};
use spidersq_core::{derive, CompoundDiagram, Exec, SearchConfig};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn semantics(c: &mut Criterion) {
    let labels = greimas::labels();
    let d1: CompoundDiagram = corner(Corner::D1).into();
    let d2: CompoundDiagram = corner(Corner::D2).into();
    let d3: CompoundDiagram = corner(Corner::D3).into();
    let axis = CompoundDiagram::and(d1.clone(), d3.clone());
    let mut g = c.benchmark_group("count_models");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::new(name, "d2 |U|=4"), |b| {
            b.iter(|| count_models_with(exec, black_box(&d2), &labels, 4).unwrap())
        });
    }
    g.finish();
    let mut g = c.benchmark_group("entails");
    for (name, exec) in STRATEGIES {
        // Holds, so every interpretation up to the bound is visited.
        g.bench_function(BenchmarkId::new(name, "d1 & d3 => d1 |U|<=4"), |b| {
            b.iter(|| entails_with(exec, black_box(&axis), &d1, 4).unwrap())
        });
        g.bench_function(BenchmarkId::new(name, "d1 => d3 |U|<=4"), |b| {
            b.iter(|| entails_with(exec, black_box(&d1), &d3, 4).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let premise = meta_term_premise(MetaTerm::Sbar);
    let target: CompoundDiagram = greimas::meta_term_target(MetaTerm::Sbar).into();
    let mut g = c.benchmark_group("derive");
    g.sample_size(20);
    for (name, exec) in STRATEGIES {
        // Sbar saturates without a proof, so the whole space is expanded.
        let cfg = SearchConfig::new(vec![premise.clone()], vec![m_witness()])
            .with_max_depth(8)
            .with_exec(exec);
        g.bench_function(BenchmarkId::new(name, "Sbar saturation"), |b| {
            b.iter(|| derive(&cfg, black_box(&target)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, semantics, search);
criterion_main!(benches);
