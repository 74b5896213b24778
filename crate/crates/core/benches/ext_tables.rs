use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wsa_core::cluster::{build_m, ext_tables};
use wsa_core::families::{Preset, PresetArgs};
use wsa_core::field::Field;
use wsa_core::parallel::Exec;

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("ext_tables");
    group.sample_size(10);
    for n in [3, 4] {
        let p = Preset::from_name("n-spherical", &PresetArgs { n: Some(n), ..Default::default() }).unwrap();
        let w = p.build(Field::Rational).unwrap();
        let m = build_m(&w.algebra, &w.gamma());
        let mods = m.modules();
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), p.id()), &mods, |b, mods| {
                b.iter(|| ext_tables(mods, mods, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
