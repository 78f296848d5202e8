//! p-blocks from reduced central characters; defect groups, heights,
//! Brauer induction and domination.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith;
use crate::context::{Quotient, Session, TabledGroup};
use crate::chartab::{CharacterTable, ClassFusion};
use crate::cyclo::{CycNum, FiniteFieldElem, ReductionData};
use crate::error::{Error, Result};
use crate::permcore::{FiniteGroup, PermGroup};

#[derive(Clone, Debug)]
pub struct Block {
    pub index: usize,
    pub prime: u64,
    /// Character indices in canonical order.
    pub characters: Vec<usize>,
    pub defect: u32,
    pub defect_group: PermGroup,
    /// The class whose centralizer supplied the defect group.
    pub defect_class: usize,
    /// `lambda_B` on every class sum.
    pub central_character: Vec<FiniteFieldElem>,
}

impl Block {
    pub fn is_principal(&self) -> bool {
        self.characters.first() == Some(&0)
    }

    pub fn defect_group_order(&self) -> u128 {
        (self.prime as u128).pow(self.defect)
    }
}

#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub prime: u64,
    pub reduction: Arc<ReductionData>,
    /// Ordered by least member; the principal block comes first.
    pub blocks: Vec<Block>,
    pub block_of: Vec<usize>,
}

/// `omega_chi(K) = |K| chi(x_K) / chi(1)`, checked to be integral.
pub fn central_character(table: &CharacterTable, chi: usize, class: usize) -> Result<CycNum> {
    let row = table.character(chi);
    let size = BigInt::from(table.classes()[class].size);
    let value = row[class].scale(&BigRational::new(size, BigInt::from(table.degree(chi))));
    if !value.is_algebraic_integer() {
        return Err(Error::IntegralityFailure);
    }
    Ok(value)
}

/// `lambda_chi` on every class, through the given reduction data.
pub fn reduced_central_character(table: &CharacterTable, chi: usize, data: &ReductionData) -> Result<Vec<FiniteFieldElem>> {
    (0..table.num_classes())
        .map(|k| data.reduce(&central_character(table, chi, k)?))
        .collect()
}

/// Blocks of a tabled group at `p`, reducing modulo a prime over `p` in
/// `Q(zeta_m)` with `m` the group exponent.
pub fn block_partition(g: &TabledGroup, p: u64) -> Result<BlockPartition> {
    block_partition_with(g, p, g.table.exponent() as u32)
}

/// As [`block_partition`], with an explicit conductor `m` (a multiple of the
/// exponent) so that central characters of several groups share one
/// residue field.
pub fn block_partition_with(g: &TabledGroup, p: u64, m: u32) -> Result<BlockPartition> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let data = ReductionData::cached(p, m)?;
    let table = &g.table;
    let n = table.characters().len();
    let lambdas = (0..n)
        .map(|chi| reduced_central_character(table, chi, &data))
        .collect::<Result<Vec<_>>>()?;
    let mut block_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for chi in 0..n {
        if block_of[chi] != usize::MAX {
            continue;
        }
        let b = members.len();
        let group: Vec<usize> = (chi..n).filter(|&psi| lambdas[psi] == lambdas[chi]).collect();
        for &psi in &group {
            block_of[psi] = b;
        }
        members.push(group);
    }
    let nu_g = arith::nu(p, g.order());
    let blocks = members
        .into_iter()
        .enumerate()
        .map(|(index, characters)| {
            let min_nu = characters
                .iter()
                .map(|&chi| arith::nu(p, table.degree(chi) as u128))
                .min()
                .unwrap();
            let defect = nu_g - min_nu;
            let lambda = lambdas[characters[0]].clone();
            let (defect_class, defect_group) = defect_group_from_classes(&g.group, p, &lambda)?;
            if defect_group.order() != (p as u128).pow(defect) {
                return Err(Error::InternalInconsistency(format!(
                    "block {index}: defect {defect} but defect class gives a group of order {}",
                    defect_group.order()
                )));
            }
            Ok(Block {
                index,
                prime: p,
                characters,
                defect,
                defect_group,
                defect_class,
                central_character: lambda,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockPartition {
        prime: p,
        reduction: data,
        blocks,
        block_of,
    })
}

/// Sylow p-subgroup of `C_G(x_K)` for the first class `K` of least
/// p-defect with `lambda(K) != 0`.
fn defect_group_from_classes(g: &FiniteGroup, p: u64, lambda: &[FiniteFieldElem]) -> Result<(usize, PermGroup)> {
    let class = (0..lambda.len())
        .filter(|&k| !lambda[k].is_zero())
        .min_by_key(|&k| (arith::nu(p, g.centralizer_order(k)), k))
        .ok_or_else(|| Error::InternalInconsistency("central character vanishes everywhere".into()))?;
    let rep = &g.classes()[class].representative;
    let centralizer = FiniteGroup::new(g.centralizer(rep)?, g.limits())?;
    Ok((class, centralizer.sylow_subgroup(p)))
}

/// A defect group of a block, recomputed from its central character.
pub fn defect_group(g: &TabledGroup, block: &Block) -> Result<PermGroup> {
    Ok(defect_group_from_classes(&g.group, block.prime, &block.central_character)?.1)
}

/// `lambda_b((K cap H)^+)` for every G-class `K`.
pub fn induced_central_function(
    h: &TabledGroup,
    block: &Block,
    g: &TabledGroup,
    fusion: &ClassFusion,
    data: &ReductionData,
) -> Result<Vec<FiniteFieldElem>> {
    let lambda = reduced_central_character(&h.table, block.characters[0], data)?;
    let mut out = vec![data.zero(); g.table.num_classes()];
    for (l, &k) in fusion.map.iter().enumerate() {
        out[k] = out[k].add(&lambda[l]);
    }
    Ok(out)
}

/// The block `b^G` of G, or `None` when the induced central function is
/// not the central character of any block of G.
pub fn brauer_induced_block(
    h: &TabledGroup,
    block: &Block,
    g: &TabledGroup,
    g_blocks: &BlockPartition,
    fusion: &ClassFusion,
) -> Result<Option<usize>> {
    let induced = induced_central_function(h, block, g, fusion, &g_blocks.reduction)?;
    Ok(g_blocks
        .blocks
        .iter()
        .position(|b| b.central_character == induced))
}

/// Height of every member, in member order.
pub fn heights(table: &CharacterTable, block: &Block) -> Vec<(usize, u32)> {
    let p = block.prime;
    let base = arith::nu(p, table.order() as u128) - block.defect;
    block
        .characters
        .iter()
        .map(|&chi| (chi, arith::nu(p, table.degree(chi) as u128) - base))
        .collect()
}

/// Members of height zero.
pub fn height_zero(table: &CharacterTable, block: &Block) -> Vec<usize> {
    heights(table, block)
        .into_iter()
        .filter(|&(_, h)| h == 0)
        .map(|(chi, _)| chi)
        .collect()
}

/// Blocks of `G/Z` dominated by a block of G.
#[derive(Debug)]
pub struct Domination {
    pub quotient: Quotient,
    pub partition: BlockPartition,
    /// Indices into `partition.blocks`.
    pub blocks: Vec<usize>,
}

/// The blocks of `G/Z` all of whose characters inflate into `Irr(B)`.
pub fn dominated_block(
    session: &Session,
    g: &TabledGroup,
    block: &Block,
    z: &PermGroup,
) -> Result<Domination> {
    let quotient = Quotient::new(session, g, z, &format!("{}/Z", g.name))?;
    let partition = block_partition(&quotient.image, block.prime)?;
    let blocks: Vec<usize> = partition
        .blocks
        .iter()
        .filter(|b| {
            b.characters
                .iter()
                .all(|&c| block.characters.contains(&quotient.inflation[c]))
        })
        .map(|b| b.index)
        .collect();
    if blocks.is_empty() {
        return Err(Error::NoDominatedBlock);
    }
    Ok(Domination {
        quotient,
        partition,
        blocks,
    })
}

/// Serializable block summary.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub index: usize,
    pub prime: u64,
    pub characters: Vec<usize>,
    pub degrees: Vec<u64>,
    pub defect: u32,
    pub defect_group_order: u128,
    pub defect_group_generators: Vec<Vec<u32>>,
    pub central_character: Vec<FiniteFieldElem>,
}

impl BlockReport {
    pub fn new(table: &CharacterTable, block: &Block) -> Self {
        BlockReport {
            index: block.index,
            prime: block.prime,
            characters: block.characters.clone(),
            degrees: block.characters.iter().map(|&c| table.degree(c)).collect(),
            defect: block.defect,
            defect_group_order: block.defect_group_order(),
            defect_group_generators: block.defect_group.generator_images(),
            central_character: block.central_character.clone(),
        }
    }
}
