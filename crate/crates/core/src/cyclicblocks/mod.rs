//! Blocks with cyclic defect groups: inertial index, exceptional
//! characters, Brauer trees, unitriangular decomposition matrices.

mod tree;

pub use tree::{
    brauer_tree, cartan_determinant, derived_brauer_characters, unitriangular_labeling, BrauerTree,
    DecompositionMatrix, LabeledTree, MatrixRow, TreeReport,
};

use serde::Serialize;

use crate::blocks::{block_partition, brauer_induced_block, Block, BlockPartition};
use crate::context::{Session, TabledGroup};
use crate::cyclo::{is_p_rational_value_set, CycNum};
use crate::error::{Error, Result};
use crate::permcore::{FiniteGroup, PermGroup};

#[derive(Clone, Debug, Serialize)]
pub struct CyclicBlockData {
    pub block: usize,
    pub prime: u64,
    pub defect_group_order: u128,
    /// Inertial index `e`.
    pub inertial_index: usize,
    /// `(|D| - 1) / e`, the number of exceptional characters.
    pub multiplicity: usize,
    pub non_exceptional: Vec<usize>,
    pub exceptional: Vec<usize>,
    pub p_rational: Vec<usize>,
    /// True when the exceptional family was found as the unique class of
    /// size `m > 1` with a common p-regular restriction; false when `m = 1`
    /// and the exceptional vertex is a labeling choice.
    pub exceptional_intrinsic: bool,
}

impl CyclicBlockData {
    pub fn is_nilpotent(&self) -> bool {
        self.inertial_index == 1
    }
}

pub fn is_central(g: &FiniteGroup, d: &PermGroup) -> bool {
    d.generators()
        .iter()
        .all(|x| g.group().generators().iter().all(|s| x.commutes_with(s)))
}

/// Orbit of a block of `C` under conjugation by the generators of `N`.
fn block_orbit(c: &TabledGroup, c_blocks: &BlockPartition, n: &PermGroup, start: usize) -> Result<Vec<usize>> {
    let r = c.table.num_classes();
    let class_perms: Vec<Vec<usize>> = n
        .generators()
        .iter()
        .map(|x| {
            (0..r)
                .map(|l| {
                    let rep = &c.group.classes()[l].representative;
                    c.group.class_of(&rep.conjugate_by(x)).ok_or(Error::NotAnAutomorphism)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        let chi = c_blocks.blocks[orbit[i]].characters[0];
        for perm in &class_perms {
            let row: Vec<CycNum> = perm.iter().map(|&l| c.table.character(chi)[l].clone()).collect();
            let image = c
                .table
                .find_character(&row)
                .ok_or_else(|| Error::InternalInconsistency("conjugate character not found".into()))?;
            let b = c_blocks.block_of[image];
            if !orbit.contains(&b) {
                orbit.push(b);
            }
        }
        i += 1;
    }
    Ok(orbit)
}

/// `e = |N_G(D, b_0) : C_G(D)|` for a block `b_0` of `C_G(D)` with `b_0^G = B`.
pub fn inertial_index(session: &Session, g: &TabledGroup, g_blocks: &BlockPartition, block: &Block) -> Result<usize> {
    let d = &block.defect_group;
    let c_group = g.group.centralizer_of_subgroup(d)?;
    let n_group = g.group.normalizer(d)?;
    let c = session.tabled(&format!("C({})", g.name), &c_group)?;
    let c_blocks = block_partition(&c, block.prime)?;
    let fusion = g.fusion_from(&c)?;
    let mut root = None;
    for b in &c_blocks.blocks {
        if brauer_induced_block(&c, b, g, g_blocks, &fusion)? == Some(block.index) {
            root = Some(b.index);
            break;
        }
    }
    let root = root.ok_or(Error::CorrespondentNotFound)?;
    let orbit = block_orbit(&c, &c_blocks, &n_group, root)?;
    let stabilizer = n_group.order() / orbit.len() as u128;
    Ok((stabilizer / c.order()) as usize)
}

/// Members grouped by their values on p-regular classes.
fn restriction_classes(g: &TabledGroup, block: &Block) -> Vec<Vec<usize>> {
    let p = block.prime;
    let mut groups: Vec<(Vec<CycNum>, Vec<usize>)> = Vec::new();
    for &chi in &block.characters {
        let res = g.table.restrict_to_p_regular(g.table.character(chi), p);
        match groups.iter_mut().find(|(r, _)| *r == res) {
            Some((_, members)) => members.push(chi),
            None => groups.push((res, vec![chi])),
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}

/// Members whose values are fixed by the Galois automorphisms over
/// the p'-part of the exponent.
pub fn p_rational_members(g: &TabledGroup, block: &Block) -> Vec<usize> {
    let m = g.table.exponent() as u32;
    block
        .characters
        .iter()
        .copied()
        .filter(|&chi| is_p_rational_value_set(g.table.character(chi), block.prime, m))
        .collect()
}

pub fn analyze_cyclic_block(
    session: &Session,
    g: &TabledGroup,
    g_blocks: &BlockPartition,
    block: &Block,
) -> Result<CyclicBlockData> {
    let d = &block.defect_group;
    if block.defect == 0 {
        return Err(Error::TrivialDefect);
    }
    if !d.is_cyclic(&session.limits)? {
        return Err(Error::NotCyclicDefect);
    }
    if is_central(&g.group, d) {
        return Err(Error::CentralDefect);
    }
    let e = inertial_index(session, g, g_blocks, block)?;
    let order_d = d.order() as usize;
    if e == 0 || (order_d - 1) % e != 0 {
        return Err(Error::InternalInconsistency(format!("inertial index {e} does not divide |D| - 1")));
    }
    let m = (order_d - 1) / e;
    if block.characters.len() != e + m {
        return Err(Error::InconsistentCount {
            found: block.characters.len(),
            expected: e + m,
        });
    }
    let p_rational = p_rational_members(g, block);
    let (exceptional, intrinsic) = if m == 1 {
        (vec![*block.characters.last().unwrap()], false)
    } else if e > 1 {
        // Two vertices share a restriction only when both are the ends of
        // a single edge, so for e > 1 the family is the unique repeated one.
        let groups = restriction_classes(g, block);
        let families: Vec<&Vec<usize>> = groups.iter().filter(|f| f.len() > 1).collect();
        if families.len() != 1 || families[0].len() != m {
            return Err(Error::InternalInconsistency(
                "no unique family of exceptional characters".into(),
            ));
        }
        (families[0].clone(), true)
    } else if block.prime != 2 {
        // e = 1: all members restrict alike; the non-exceptional one is the
        // unique p-rational member.
        if p_rational.len() != 1 {
            return Err(Error::InternalInconsistency(format!(
                "{} p-rational members in a nilpotent block",
                p_rational.len()
            )));
        }
        let exc = block.characters.iter().copied().filter(|c| *c != p_rational[0]).collect();
        (exc, true)
    } else {
        // p = 2, e = 1: one of the two 2-rational members is exceptional;
        // either choice gives the same single-edge tree.
        let chosen = *p_rational.last().ok_or_else(|| {
            Error::InternalInconsistency("no 2-rational member in a cyclic 2-block".into())
        })?;
        let exc = block
            .characters
            .iter()
            .copied()
            .filter(|c| !p_rational.contains(c) || *c == chosen)
            .collect();
        (exc, false)
    };
    let non_exceptional = block
        .characters
        .iter()
        .copied()
        .filter(|c| !exceptional.contains(c))
        .collect();
    Ok(CyclicBlockData {
        block: block.index,
        prime: block.prime,
        defect_group_order: d.order(),
        inertial_index: e,
        multiplicity: m,
        non_exceptional,
        exceptional,
        p_rational,
        exceptional_intrinsic: intrinsic,
    })
}

/// Decomposition data for any block the toolkit handles.
#[derive(Clone, Debug)]
pub enum BlockStructure {
    DefectZero,
    /// Cyclic defect group inside the center: one Brauer character.
    CentralDefect,
    Cyclic {
        data: CyclicBlockData,
        tree: BrauerTree,
        labeled: LabeledTree,
    },
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub structure: BlockStructure,
    pub matrix: DecompositionMatrix,
    /// Values on the p-regular classes, in column order.
    pub brauer_characters: Vec<Vec<CycNum>>,
}

impl BlockDecomposition {
    pub fn num_brauer_characters(&self) -> usize {
        self.matrix.num_columns()
    }
}

/// Full decomposition of a block with trivial, central or cyclic defect.
pub fn decompose_block(
    session: &Session,
    g: &TabledGroup,
    g_blocks: &BlockPartition,
    block: &Block,
) -> Result<BlockDecomposition> {
    let p = block.prime;
    let single_column = |structure: BlockStructure| -> Result<BlockDecomposition> {
        let matrix = DecompositionMatrix::single_column(&block.characters);
        let brauer_characters = derived_brauer_characters(&g.table, p, &matrix)?;
        Ok(BlockDecomposition {
            structure,
            matrix,
            brauer_characters,
        })
    };
    if block.defect == 0 {
        return single_column(BlockStructure::DefectZero);
    }
    match analyze_cyclic_block(session, g, g_blocks, block) {
        Err(Error::CentralDefect) => single_column(BlockStructure::CentralDefect),
        Err(e) => Err(e),
        Ok(data) => {
            let tree = brauer_tree(g, &data)?;
            let labeled = unitriangular_labeling(&tree);
            let matrix = DecompositionMatrix::from_labeled(&tree, &labeled, &data);
            let brauer_characters = derived_brauer_characters(&g.table, p, &matrix)?;
            Ok(BlockDecomposition {
                structure: BlockStructure::Cyclic { data, tree, labeled },
                matrix,
                brauer_characters,
            })
        }
    }
}
