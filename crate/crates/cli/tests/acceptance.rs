//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use blocktool_core::blocks::{block_partition, Block, BlockPartition};
use blocktool_core::context::{Session, TabledGroup};
use blocktool_core::cyclicblocks::{
    analyze_cyclic_block, cartan_determinant, decompose_block, is_central, p_rational_members, BlockStructure,
};
use blocktool_core::lietype::{cross_check_small_instance, cyclic_sylow_criterion, grid, CriterionReport, LieTypeCase, Series};
use blocktool_core::verify::{am_check, brauer_correspondent, first_main_check, in_refinement_check};
use blocktool_core::weights::weight_analysis;
use blocktool_core::{CycNum, GroupFile, Limits, PermGroup};

const ROOT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
const CORPUS: &[&str] = &["trivial", "C2", "C4", "C7", "S3", "A4", "D10", "S4", "SL2_3", "A5", "PSL2_7"];
const PRIMES: [u64; 4] = [2, 3, 5, 7];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> PermGroup {
    let text = std::fs::read_to_string(format!("{ROOT}/corpus/{name}.json")).unwrap();
    GroupFile::parse(&text).unwrap().to_group().unwrap()
}

struct Case {
    g: TabledGroup,
    p: u64,
    part: BlockPartition,
}

fn cases(session: &Session) -> Vec<Case> {
    let mut out = Vec::new();
    for name in CORPUS {
        let group = load(name);
        for p in PRIMES {
            if group.order() % p as u128 != 0 {
                continue;
            }
            let g = session.tabled(name, &group).unwrap();
            let part = block_partition(&g, p).unwrap();
            out.push(Case { g, p, part });
        }
    }
    out
}

fn cyclic_blocks<'a>(session: &Session, c: &'a Case) -> Vec<&'a Block> {
    c.part
        .blocks
        .iter()
        .filter(|b| b.defect > 0 && b.defect_group.is_cyclic(&session.limits).unwrap())
        .collect()
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

fn criterion_1(session: &Session) -> Outcome {
    let published: &[(&str, &[u64])] = &[
        ("C2", &[1, 1]),
        ("C4", &[1, 1, 1, 1]),
        ("S3", &[1, 1, 2]),
        ("A4", &[1, 1, 1, 3]),
        ("S4", &[1, 1, 2, 3, 3]),
        ("D10", &[1, 1, 2, 2]),
        ("SL2_3", &[1, 1, 1, 2, 2, 2, 3]),
        ("A5", &[1, 3, 3, 4, 5]),
        ("PSL2_7", &[1, 3, 3, 6, 7, 8]),
    ];
    let start = Instant::now();
    for (name, degrees) in published {
        let g = session.tabled(name, &load(name)).map_err(|e| format!("{name}: {e}"))?;
        g.table.validate().map_err(|e| format!("{name}: {e}"))?;
        ensure(sorted(g.table.degrees()) == *degrees, || format!("{name}: degrees {:?}", g.table.degrees()))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("9 tables orthogonal, degrees match, {secs:.2} s"))
}

fn criterion_2(all: &[Case]) -> Outcome {
    for c in all {
        let total: usize = c.part.blocks.iter().map(|b| b.characters.len()).sum();
        ensure(total == c.g.table.characters().len(), || format!("{} p={}", c.g.name, c.p))?;
    }
    let c = all.iter().find(|c| c.g.name == "A5" && c.p == 5).unwrap();
    let degrees: Vec<Vec<u64>> = c
        .part
        .blocks
        .iter()
        .map(|b| sorted(b.characters.iter().map(|&x| c.g.table.degree(x)).collect()))
        .collect();
    ensure(degrees == vec![vec![1, 3, 3, 4], vec![5]], || format!("A5 p=5 blocks {degrees:?}"))?;
    ensure(c.part.blocks[1].defect == 0, || "A5 {5} not of defect zero".into())?;
    Ok(format!("{} (G, p) partitions; A5/5 = {{1,3,3,4}} + {{5}}", all.len()))
}

fn criterion_3(session: &Session, all: &[Case]) -> Outcome {
    let mut count = 0;
    for c in all {
        for b in cyclic_blocks(session, c) {
            let d = b.defect_group_order() as usize;
            let e = if is_central(&c.g.group, &b.defect_group) {
                1
            } else {
                analyze_cyclic_block(session, &c.g, &c.part, b).map_err(|e| format!("{} p={}: {e}", c.g.name, c.p))?.inertial_index
            };
            ensure(b.characters.len() == e + (d - 1) / e, || {
                format!("{} p={} block {}: {} != {e} + ({d}-1)/{e}", c.g.name, c.p, b.index, b.characters.len())
            })?;
            count += 1;
        }
    }
    let a5 = all.iter().find(|c| c.g.name == "A5" && c.p == 5).unwrap();
    let e = analyze_cyclic_block(session, &a5.g, &a5.part, &a5.part.blocks[0]).unwrap().inertial_index;
    ensure(e == 2, || format!("A5/5 e = {e}"))?;
    Ok(format!("{count} cyclic blocks; A5/5 e = 2"))
}

fn criterion_4(session: &Session, all: &[Case]) -> Outcome {
    let mut count = 0;
    for c in all {
        for b in cyclic_blocks(session, c) {
            let tag = format!("{} p={} block {}", c.g.name, c.p, b.index);
            let dec = decompose_block(session, &c.g, &c.part, b).map_err(|e| format!("{tag}: {e}"))?;
            if let BlockStructure::Cyclic { data, tree, labeled } = &dec.structure {
                ensure(tree.is_tree() && tree.edges.len() == data.inertial_index, || format!("{tag}: not a tree with e edges"))?;
                for (j, &(a, b)) in labeled.edges.iter().enumerate() {
                    ensure(a == j + 1 && b > a, || format!("{tag}: edge {} is {a}-{b}", j + 1))?;
                }
            }
            ensure(dec.matrix.is_unitriangular(), || format!("{tag}: not unitriangular"))?;
            let regular = c.g.table.p_regular_classes(c.p);
            for (row, &chi) in dec.matrix.rows.iter().enumerate() {
                for (k, _) in regular.iter().enumerate() {
                    let sum: CycNum = dec.matrix.entries[row]
                        .iter()
                        .zip(&dec.brauer_characters)
                        .map(|(&d, phi)| &phi[k] * &CycNum::from_int(d as i64))
                        .sum();
                    ensure(sum == c.g.table.character(chi)[regular[k]], || format!("{tag}: row {chi} not reconstructed"))?;
                }
            }
            let det = cartan_determinant(&dec.matrix);
            ensure(det == b.defect_group_order() as i128, || format!("{tag}: det C = {det}"))?;
            count += 1;
        }
    }
    let a5 = all.iter().find(|c| c.g.name == "A5" && c.p == 5).unwrap();
    let dec = decompose_block(session, &a5.g, &a5.part, &a5.part.blocks[0]).unwrap();
    let BlockStructure::Cyclic { tree, labeled, .. } = &dec.structure else {
        return Err("A5/5 principal block not cyclic".into());
    };
    let degree_of = |v: usize| {
        if v == tree.non_exceptional.len() {
            None
        } else {
            Some(a5.g.table.degree(tree.non_exceptional[v]))
        }
    };
    let path: Vec<Option<u64>> = labeled.by_label.iter().map(|&v| degree_of(v)).collect();
    ensure(path == vec![Some(1), Some(4), None] && labeled.edges == vec![(1, 2), (2, 3)], || {
        format!("A5/5 tree {path:?} {:?}", labeled.edges)
    })?;
    ensure(cartan_determinant(&dec.matrix) == 5, || "A5/5 det".into())?;
    Ok(format!("{count} blocks: trees, labeling, unitriangularity, reconstruction, det C = |D|; A5/5 path 1-4-exc, det 5"))
}

fn criterion_5(session: &Session, all: &[Case]) -> Outcome {
    let (mut odd, mut two) = (0, 0);
    for c in all {
        for b in cyclic_blocks(session, c) {
            let tag = format!("{} p={} block {}", c.g.name, c.p, b.index);
            let central = is_central(&c.g.group, &b.defect_group);
            let data = if central {
                None
            } else {
                Some(analyze_cyclic_block(session, &c.g, &c.part, b).map_err(|e| format!("{tag}: {e}"))?)
            };
            if c.p == 2 {
                let e = data.as_ref().map_or(1, |d| d.inertial_index);
                let rational = p_rational_members(&c.g, b).len();
                ensure(e == 1 && rational == 2, || format!("{tag}: e = {e}, {rational} 2-rational"))?;
                two += 1;
            } else if let Some(d) = data.filter(|d| d.multiplicity > 1) {
                ensure(d.non_exceptional == d.p_rational, || format!("{tag}: non-exceptional != p-rational"))?;
                odd += 1;
            }
        }
    }
    Ok(format!("{odd} odd blocks with m > 1, {two} cyclic 2-blocks"))
}

fn criterion_6_7(session: &Session, all: &[Case], in_check: bool) -> Outcome {
    let mut count = 0;
    for c in all {
        for b in cyclic_blocks(session, c) {
            let tag = format!("{} p={} block {}", c.g.name, c.p, b.index);
            let (local, corr) = brauer_correspondent(session, &c.g, &c.part, b).map_err(|e| format!("{tag}: {e}"))?;
            if in_check {
                let r = in_refinement_check(session, &c.g, &c.part, b, &local, corr);
                ensure(r.pass, || format!("{tag}: no matching"))?;
            } else {
                let r = am_check(&c.g, b, &local, corr);
                ensure(r.pass, || format!("{tag}: {} != {}", r.height_zero.len(), r.correspondent_height_zero.len()))?;
            }
            count += 1;
        }
    }
    let a5 = all.iter().find(|c| c.g.name == "A5" && c.p == 5).unwrap();
    let b = &a5.part.blocks[0];
    let (local, corr) = brauer_correspondent(session, &a5.g, &a5.part, b).unwrap();
    if in_check {
        let r = in_refinement_check(session, &a5.g, &a5.part, b, &local, corr);
        ensure(r.c == 6 && r.pass, || format!("A5/5 c = {}", r.c))?;
        let pairs: Vec<String> = r.matching.iter().map(|m| format!("{}->{}", m.degree, m.correspondent_degree)).collect();
        Ok(format!("{count} blocks matched; A5/5 c = 6, witness {}", pairs.join(" ")))
    } else {
        let r = am_check(&a5.g, b, &local, corr);
        let n = (r.height_zero.len(), r.correspondent_height_zero.len());
        ensure(n == (4, 4), || format!("A5/5 {n:?}"))?;
        Ok(format!("{count} blocks; A5/5 4 = 4"))
    }
}

fn criterion_8(session: &Session, all: &[Case]) -> Outcome {
    let mut count = 0;
    for c in all {
        let analysis = weight_analysis(session, &c.g, &c.part).map_err(|e| format!("{} p={}: {e}", c.g.name, c.p))?;
        for b in &c.part.blocks {
            let tag = format!("{} p={} block {}", c.g.name, c.p, b.index);
            let weights = analysis.weights_of_block(b.index);
            if b.defect_group.is_abelian() {
                for w in &weights {
                    let q = &analysis.radical_groups[w.radical];
                    ensure(c.g.group.are_conjugate(q, &b.defect_group), || format!("{tag}: weight off the defect group"))?;
                }
            }
            if b.defect > 0 && !b.defect_group.is_cyclic(&session.limits).unwrap() {
                continue;
            }
            let dec = decompose_block(session, &c.g, &c.part, b).map_err(|e| format!("{tag}: {e}"))?;
            ensure(weights.len() == dec.num_brauer_characters(), || {
                format!("{tag}: {} weights, {} Brauer characters", weights.len(), dec.num_brauer_characters())
            })?;
            count += 1;
        }
    }
    let a5 = all.iter().find(|c| c.g.name == "A5" && c.p == 5).unwrap();
    let analysis = weight_analysis(session, &a5.g, &a5.part).unwrap();
    ensure(analysis.weights_of_block(0).len() == 2, || "A5/5 principal weights".into())?;
    Ok(format!("{count} blocks; A5/5 principal 2 = 2; abelian-defect weights on D"))
}

fn criterion_9(session: &Session, all: &[Case]) -> Outcome {
    let mut count = 0;
    for c in all {
        let mut seen: Vec<PermGroup> = Vec::new();
        for b in cyclic_blocks(session, c) {
            if seen.iter().any(|d| c.g.group.are_conjugate(d, &b.defect_group)) {
                continue;
            }
            seen.push(b.defect_group.clone());
            let r = first_main_check(session, &c.g, &c.part, &b.defect_group).map_err(|e| format!("{} p={}: {e}", c.g.name, c.p))?;
            ensure(r.pass, || format!("{} p={} |D|={}: {:?} -> {:?}", c.g.name, c.p, r.defect_group_order, r.induced, r.global_blocks))?;
            count += 1;
        }
    }
    Ok(format!("{count} (G, p, D) bijections"))
}

fn naive_order(a: i64, p: u64) -> u64 {
    let a = a.rem_euclid(p as i64) as u64;
    let (mut x, mut d) = (a, 1);
    while x != 1 {
        x = x * a % p;
        d += 1;
    }
    d
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let path = format!("{ROOT}/crates/core/tests/golden/lietype_grid.json");
    let golden: Vec<CriterionReport> =
        serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let live: Vec<CriterionReport> = grid(4, &[2, 3, 4, 5], 13).iter().map(|c| cyclic_sylow_criterion(c).unwrap()).collect();
    ensure(golden == live, || "golden file differs from evaluation".into())?;
    for r in &golden {
        let base = if r.d_of_minus_q { -(r.q as i64) } else { r.q as i64 };
        ensure(r.d == naive_order(base, r.p), || format!("{:?} n={} q={} p={}: d", r.series, r.n, r.q, r.p))?;
    }
    let psl = load("PSL2_7");
    for p in [3, 7] {
        let case = LieTypeCase {
            series: Series::A,
            n: 2,
            q: 2,
            p,
        };
        let x = cross_check_small_instance(&case, &psl, Limits::default()).map_err(|e| e.to_string())?;
        ensure(x.consistent && x.sylow_cyclic, || format!("A_2(2) p={p} inconsistent"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} grid cases match recomputed d; A_2(2) p=3,7 consistent, {secs:.2} s", golden.len()))
}

fn criterion_11() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_blocktool"))
            .args(["corpus", "corpus/manifest.json", "--jobs", "4"])
            .current_dir(ROOT)
            .env_remove("BLOCKTOOL_CACHE")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || String::from_utf8_lossy(&a.stdout).into_owned())?;
    ensure(a.stdout == b.stdout, || "aggregate reports differ".into())?;
    Ok(format!("two corpus runs byte-identical ({} bytes)", a.stdout.len()))
}

fn main() {
    let session = Session::default();
    let all = cases(&session);
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "character tables", criterion_1(&session)),
        (2, "block partition", criterion_2(&all)),
        (3, "cyclic-block counting", criterion_3(&session, &all)),
        (4, "Brauer trees and unitriangularity", criterion_4(&session, &all)),
        (5, "p-rationality", criterion_5(&session, &all)),
        (6, "AM counting", criterion_6_7(&session, &all, false)),
        (7, "IN refinement", criterion_6_7(&session, &all, true)),
        (8, "BAW counting", criterion_8(&session, &all)),
        (9, "first main theorem", criterion_9(&session, &all)),
        (10, "Lie-type arithmetic", criterion_10()),
        (11, "determinism", criterion_11()),
    ];
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("criterion {n:>2} PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
