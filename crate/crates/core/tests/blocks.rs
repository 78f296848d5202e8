use blocktool_core::blocks::{
    block_partition, brauer_induced_block, central_character, dominated_block, height_zero, BlockPartition,
};
use blocktool_core::context::{Session, TabledGroup};
use blocktool_core::{CycNum, GroupFile, PermGroup};

fn load(name: &str) -> PermGroup {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    GroupFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap().to_group().unwrap()
}

fn tabled(name: &str) -> TabledGroup {
    Session::default().tabled(name, &load(name)).unwrap()
}

fn degree_sets(g: &TabledGroup, part: &BlockPartition) -> Vec<Vec<u64>> {
    part.blocks
        .iter()
        .map(|b| b.characters.iter().map(|&c| g.table.degree(c)).collect())
        .collect()
}

#[test]
fn central_character_examples() {
    let g = tabled("A5");
    let t = &g.table;
    let five = (0..5).find(|&c| t.classes()[c].order == 5).unwrap();
    assert_eq!(central_character(t, 0, 0).unwrap(), CycNum::one());
    assert_eq!(central_character(t, 0, five).unwrap(), CycNum::from_int(12));
    let chi4 = (0..5).find(|&i| t.degree(i) == 4).unwrap();
    assert_eq!(central_character(t, chi4, five).unwrap(), CycNum::from_int(-3));
}

#[test]
fn a5_at_five() {
    let g = tabled("A5");
    let part = block_partition(&g, 5).unwrap();
    assert_eq!(degree_sets(&g, &part), vec![vec![1, 3, 3, 4], vec![5]]);
    assert_eq!(part.blocks[0].defect, 1);
    assert_eq!(part.blocks[0].defect_group.order(), 5);
    assert_eq!(part.blocks[1].defect, 0);
    assert!(part.blocks[1].defect_group.is_trivial());
    assert_eq!(height_zero(&g.table, &part.blocks[0]).len(), 4);
}

#[test]
fn coprime_prime_gives_defect_zero_blocks() {
    let g = tabled("A5");
    let part = block_partition(&g, 7).unwrap();
    assert_eq!(part.blocks.len(), 5);
    assert!(part.blocks.iter().all(|b| b.defect == 0 && b.characters.len() == 1));
}

#[test]
fn s3_at_three_is_one_block() {
    let g = tabled("S3");
    let part = block_partition(&g, 3).unwrap();
    assert_eq!(part.blocks.len(), 1);
    assert_eq!(part.blocks[0].defect_group.order(), 3);
}

#[test]
fn principal_block_of_normalizer_induces_principal() {
    let session = Session::default();
    let g = tabled("A5");
    let gp = block_partition(&g, 5).unwrap();
    let d = gp.blocks[0].defect_group.clone();
    let n = session.tabled("N", &g.group.normalizer(&d).unwrap()).unwrap();
    assert_eq!(n.order(), 10);
    let np = block_partition(&n, 5).unwrap();
    let fusion = g.fusion_from(&n).unwrap();
    assert_eq!(brauer_induced_block(&n, &np.blocks[0], &g, &gp, &fusion).unwrap(), Some(0));
    // H = G induces each block to itself.
    let same = g.fusion_from(&g).unwrap();
    for b in &gp.blocks {
        assert_eq!(brauer_induced_block(&g, b, &g, &gp, &same).unwrap(), Some(b.index));
    }
}

#[test]
fn sl23_principal_three_block_dominates_a4_principal() {
    let session = Session::default();
    let g = tabled("SL2_3");
    let part = block_partition(&g, 3).unwrap();
    let z = g.group.center();
    assert_eq!(z.order(), 2);
    let dom = dominated_block(&session, &g, &part.blocks[0], &z).unwrap();
    assert_eq!(dom.quotient.image.order(), 12);
    assert_eq!(dom.blocks, vec![0]);
    // Inflating the dominated block lands inside the principal block.
    for &c in &dom.partition.blocks[0].characters {
        assert!(part.blocks[0].characters.contains(&dom.quotient.inflation[c]));
    }
    // The faithful characters of SL(2,3) do not contain Z in their kernel.
    let faithful = part.blocks.iter().find(|b| b.characters.iter().all(|&c| g.table.degree(c) == 2));
    if let Some(b) = faithful {
        assert!(dominated_block(&session, &g, b, &z).is_err());
    }
}
