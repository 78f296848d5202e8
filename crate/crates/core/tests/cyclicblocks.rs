use blocktool_core::blocks::block_partition;
use blocktool_core::context::{Session, TabledGroup};
use blocktool_core::cyclicblocks::{
    analyze_cyclic_block, cartan_determinant, decompose_block, p_rational_members, BlockStructure,
};
use blocktool_core::{arith, GroupFile, PermGroup};

const CORPUS: &[&str] = &["C2", "C4", "C7", "S3", "A4", "S4", "D10", "SL2_3", "A5", "PSL2_7", "trivial"];

fn load(name: &str) -> PermGroup {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    GroupFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap().to_group().unwrap()
}

fn tabled(name: &str) -> TabledGroup {
    Session::default().tabled(name, &load(name)).unwrap()
}

#[test]
fn a5_principal_five_block() {
    let session = Session::default();
    let g = tabled("A5");
    let part = block_partition(&g, 5).unwrap();
    let data = analyze_cyclic_block(&session, &g, &part, &part.blocks[0]).unwrap();
    assert_eq!(data.inertial_index, 2);
    assert_eq!(data.multiplicity, 2);
    let deg = |v: &[usize]| v.iter().map(|&c| g.table.degree(c)).collect::<Vec<_>>();
    assert_eq!(deg(&data.non_exceptional), vec![1, 4]);
    assert_eq!(deg(&data.exceptional), vec![3, 3]);
    assert_eq!(p_rational_members(&g, &part.blocks[0]), data.non_exceptional);
    assert!(!data.is_nilpotent());

    let dec = decompose_block(&session, &g, &part, &part.blocks[0]).unwrap();
    let BlockStructure::Cyclic { tree, labeled, .. } = &dec.structure else {
        panic!("expected a cyclic block");
    };
    // Path (deg 1) - (deg 4) - exceptional.
    assert_eq!(tree.edges, vec![(0, 1), (1, 2)]);
    assert_eq!(labeled.edges, vec![(1, 2), (2, 3)]);
    assert_eq!(dec.matrix.entries, vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 1]]);
    assert_eq!(cartan_determinant(&dec.matrix), 5);
    let phi_degrees: Vec<i64> = dec.brauer_characters.iter().map(|phi| phi[0].to_i64().unwrap()).collect();
    assert_eq!(phi_degrees, vec![1, 3]);
}

#[test]
fn s3_blocks() {
    let session = Session::default();
    let g = tabled("S3");
    let part = block_partition(&g, 3).unwrap();
    let data = analyze_cyclic_block(&session, &g, &part, &part.blocks[0]).unwrap();
    assert_eq!((data.inertial_index, data.multiplicity), (2, 1));
    let dec = decompose_block(&session, &g, &part, &part.blocks[0]).unwrap();
    let BlockStructure::Cyclic { tree, .. } = &dec.structure else {
        panic!("expected a cyclic block");
    };
    assert_eq!(tree.edges.len(), 2);
    assert!(tree.is_tree());

    let part = block_partition(&g, 2).unwrap();
    let principal = &part.blocks[0];
    assert_eq!(principal.characters.len(), 2);
    let data = analyze_cyclic_block(&session, &g, &part, principal).unwrap();
    assert!(data.is_nilpotent());
    assert_eq!(data.multiplicity, 1);
    assert_eq!(p_rational_members(&g, principal).len(), 2);
    let dec = decompose_block(&session, &g, &part, principal).unwrap();
    assert_eq!(dec.matrix.entries, vec![vec![1], vec![1]]);
}

#[test]
fn central_defect_is_flagged() {
    let session = Session::default();
    let g = tabled("C7");
    let part = block_partition(&g, 7).unwrap();
    assert_eq!(part.blocks.len(), 1);
    let err = analyze_cyclic_block(&session, &g, &part, &part.blocks[0]).unwrap_err();
    assert_eq!(err.code(), "CentralDefect");
    let dec = decompose_block(&session, &g, &part, &part.blocks[0]).unwrap();
    assert!(matches!(dec.structure, BlockStructure::CentralDefect));
    assert_eq!(dec.matrix.entries.len(), 7);
    assert_eq!(cartan_determinant(&dec.matrix), 7);
}

/// Every cyclic-defect block in the corpus: counting law, tree shape,
/// labeling rule, unitriangularity, Cartan determinant, rationality laws.
#[test]
fn corpus_cyclic_blocks() {
    let session = Session::default();
    let mut cyclic_seen = 0;
    for name in CORPUS {
        let g = tabled(name);
        for p in [2u64, 3, 5, 7] {
            if g.order() % p as u128 != 0 {
                continue;
            }
            let part = block_partition(&g, p).unwrap();
            for block in &part.blocks {
                let data = match analyze_cyclic_block(&session, &g, &part, block) {
                    Ok(d) => d,
                    Err(e) if ["NotCyclicDefect", "CentralDefect", "TrivialDefect"].contains(&e.code()) => continue,
                    Err(e) => panic!("{name} p={p} block {}: {e}", block.index),
                };
                cyclic_seen += 1;
                let d = data.defect_group_order as usize;
                let e = data.inertial_index;
                assert_eq!(block.characters.len(), e + (d - 1) / e, "{name} p={p}");
                assert_eq!((p as usize - 1) % e, 0);
                let dec = decompose_block(&session, &g, &part, block)
                    .unwrap_or_else(|err| panic!("{name} p={p} block {}: {err}", block.index));
                let BlockStructure::Cyclic { tree, labeled, .. } = &dec.structure else {
                    panic!("expected a cyclic block");
                };
                assert!(tree.is_tree());
                assert_eq!(tree.edges.len(), e);
                assert_eq!(labeled.vertex_label[tree.exceptional_vertex()], e + 1);
                for (i, &(a, b)) in labeled.edges.iter().enumerate() {
                    assert_eq!(a, i + 1);
                    assert!(b > a);
                }
                assert!(dec.matrix.is_unitriangular());
                assert_eq!(cartan_determinant(&dec.matrix), d as i128, "{name} p={p}");
                let rational = p_rational_members(&g, block);
                if p == 2 {
                    assert_eq!(e, 1, "{name}: cyclic 2-blocks are nilpotent");
                    assert_eq!(rational.len(), 2, "{name}");
                } else if data.multiplicity > 1 {
                    assert_eq!(rational, data.non_exceptional, "{name} p={p}");
                }
                let nu = arith::nu(p, g.order());
                assert_eq!(d as u128, (p as u128).pow(block.defect));
                assert!(block.defect <= nu);
            }
        }
    }
    assert!(cyclic_seen >= 10, "only {cyclic_seen} cyclic blocks");
}

/// In PSL(2,7) at p = 7 the vanishing graph is a 4-cycle; projective
/// characters single out the path 1 - 6 - 8 - exceptional, whose Brauer
/// characters have degrees 1, 5, 3 (the symmetric powers of the natural
/// module in characteristic 7).
#[test]
fn psl27_tree_needs_projectives() {
    let session = Session::default();
    let g = tabled("PSL2_7");
    let part = block_partition(&g, 7).unwrap();
    let principal = &part.blocks[0];
    let dec = decompose_block(&session, &g, &part, principal).unwrap();
    let BlockStructure::Cyclic { tree, labeled, data } = &dec.structure else {
        panic!("expected a cyclic block");
    };
    assert_eq!(data.inertial_index, 3);
    let by_label: Vec<u64> = labeled.by_label[..3]
        .iter()
        .map(|&v| g.table.degree(tree.non_exceptional[v]))
        .collect();
    assert_eq!(by_label, vec![1, 6, 8]);
    assert_eq!(labeled.edges, vec![(1, 2), (2, 3), (3, 4)]);
    let phi: Vec<i64> = dec.brauer_characters.iter().map(|f| f[0].to_i64().unwrap()).collect();
    assert_eq!(phi, vec![1, 5, 3]);
}
