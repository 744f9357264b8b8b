use criterion::{criterion_group, criterion_main, Criterion};
use wbck_algebra::enumerate::enumerate_posets;
use wbck_algebra::search::enumerate_imp_tables;
use wbck_algebra::verify::{criterion_condition_s, SuiteConfig};
use wbck_algebra::{AxiomId, Exec, OrderClass, Poset};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn posets(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_posets_6");
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| enumerate_posets(6, OrderClass::Any, exec).unwrap().len()));
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let p = Poset::chain(5).unwrap();
    let mut g = c.benchmark_group("wbck_tables_chain5");
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| b.iter(|| enumerate_imp_tables(&p, &[AxiomId::WExch], exec).unwrap().len()));
    }
    g.finish();
}

fn condition_s(c: &mut Criterion) {
    let mut g = c.benchmark_group("condition_s_sweep_4");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let cfg = SuiteConfig::new(4, exec);
        g.bench_function(name, |b| b.iter(|| criterion_condition_s(&cfg).unwrap().checked));
    }
    g.finish();
}

criterion_group!(benches, posets, tables, condition_s);
criterion_main!(benches);
