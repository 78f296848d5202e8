use criterion::{black_box, criterion_group, criterion_main, Criterion};

use blocktool_bench::corpus_group;
use blocktool_core::blocks::block_partition;
use blocktool_core::chartab::character_table;
use blocktool_core::context::Session;
use blocktool_core::lietype::{cyclic_sylow_criterion, grid};
use blocktool_core::verify::{full_group_report, VerifyOptions};
use blocktool_core::Limits;

fn tables(c: &mut Criterion) {
    for name in ["S4", "A5", "PSL2_7"] {
        let g = corpus_group(name);
        c.bench_function(&format!("character_table/{name}"), |b| {
            b.iter(|| character_table(black_box(&g), Limits::default()).unwrap())
        });
    }
}

fn blocks(c: &mut Criterion) {
    let session = Session::default();
    let g = session.tabled("PSL2_7", &corpus_group("PSL2_7")).unwrap();
    c.bench_function("block_partition/PSL2_7/p=7", |b| b.iter(|| block_partition(black_box(&g), 7).unwrap()));
}

fn verify(c: &mut Criterion) {
    let session = Session::default();
    for (name, p) in [("A5", 5), ("PSL2_7", 7)] {
        let g = session.tabled(name, &corpus_group(name)).unwrap();
        c.bench_function(&format!("full_group_report/{name}/p={p}"), |b| {
            b.iter(|| full_group_report(&session, black_box(&g), p, VerifyOptions::ALL))
        });
    }
}

fn lietype(c: &mut Criterion) {
    let cases = grid(4, &[2, 3, 4, 5], 13);
    c.bench_function("lietype/grid", |b| {
        b.iter(|| cases.iter().filter(|x| cyclic_sylow_criterion(x).unwrap().criterion).count())
    });
}

criterion_group!(benches, tables, blocks, verify, lietype);
criterion_main!(benches);
