//! Weights: defect-zero characters of `N_G(Q)/Q` for radical p-subgroups
//! `Q`, attached to blocks by inflation and Brauer induction.

use serde::Serialize;

use crate::arith;
use crate::blocks::{block_partition, brauer_induced_block, BlockPartition};
use crate::context::{Quotient, Session, TabledGroup};
use crate::error::Result;
use crate::permcore::PermGroup;

/// One defect-zero character of `N_G(Q)/Q` and where it lands.
#[derive(Clone, Debug, Serialize)]
pub struct WeightCandidate {
    /// Index in the table of `N_G(Q)/Q`.
    pub character: usize,
    pub degree: u64,
    /// Block of `N_G(Q)` containing the inflation.
    pub normalizer_block: usize,
    /// `(B')^G`, or `None` when undefined.
    pub induced_block: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalClass {
    pub index: usize,
    pub order: u128,
    pub generators: Vec<Vec<u32>>,
    pub normalizer_order: u128,
    pub quotient_order: u128,
    pub candidates: Vec<WeightCandidate>,
}

/// Weight data for every radical class of one group at one prime.
#[derive(Clone, Debug, Serialize)]
pub struct WeightAnalysis {
    pub prime: u64,
    pub radicals: Vec<RadicalClass>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub radical_groups: Vec<PermGroup>,
}

/// A weight of a particular block.
#[derive(Clone, Debug, Serialize)]
pub struct Weight {
    pub radical: usize,
    pub radical_order: u128,
    pub character: usize,
    pub degree: u64,
}

/// Defect-zero characters of `N/Q` given as a tabled quotient:
/// `nu_p(chi(1)) = nu_p(|N/Q|)`.
pub fn defect_zero_characters(quotient: &TabledGroup, p: u64) -> Vec<usize> {
    let top = arith::nu(p, quotient.order());
    (0..quotient.table.characters().len())
        .filter(|&c| arith::nu(p, quotient.table.degree(c) as u128) == top)
        .collect()
}

/// `dz(N_G(Q)/Q)` as character degrees of the quotient.
pub fn dz_characters(session: &Session, g: &TabledGroup, q: &PermGroup, p: u64) -> Result<Vec<u64>> {
    let n = session.tabled("N", &g.group.normalizer(q)?)?;
    let quotient = Quotient::new(session, &n, q, "N/Q")?;
    Ok(defect_zero_characters(&quotient.image, p)
        .into_iter()
        .map(|c| quotient.image.table.degree(c))
        .collect())
}

pub fn weight_analysis(session: &Session, g: &TabledGroup, g_blocks: &BlockPartition) -> Result<WeightAnalysis> {
    let p = g_blocks.prime;
    let radical_groups = g.group.radical_p_subgroups(p)?;
    let mut radicals = Vec::new();
    let mut warnings = Vec::new();
    for (index, q) in radical_groups.iter().enumerate() {
        let n = session.tabled(&format!("N(Q{index})"), &g.group.normalizer(q)?)?;
        let n_blocks = block_partition(&n, p)?;
        let fusion = g.fusion_from(&n)?;
        let quotient = Quotient::new(session, &n, q, &format!("N(Q{index})/Q{index}"))?;
        let mut candidates = Vec::new();
        for c in defect_zero_characters(&quotient.image, p) {
            let inflated = quotient.inflation[c];
            let b = n_blocks.block_of[inflated];
            let induced = brauer_induced_block(&n, &n_blocks.blocks[b], g, g_blocks, &fusion)?;
            if induced.is_none() {
                warnings.push(format!(
                    "radical class {index}: block {b} of the normalizer has no induced block; character {c} skipped"
                ));
            }
            candidates.push(WeightCandidate {
                character: c,
                degree: quotient.image.table.degree(c),
                normalizer_block: b,
                induced_block: induced,
            });
        }
        radicals.push(RadicalClass {
            index,
            order: q.order(),
            generators: q.generator_images(),
            normalizer_order: n.order(),
            quotient_order: quotient.image.order(),
            candidates,
        });
    }
    Ok(WeightAnalysis {
        prime: p,
        radicals,
        warnings,
        radical_groups,
    })
}

impl WeightAnalysis {
    pub fn weights_of_block(&self, block: usize) -> Vec<Weight> {
        self.radicals
            .iter()
            .flat_map(|r| {
                r.candidates
                    .iter()
                    .filter(move |c| c.induced_block == Some(block))
                    .map(move |c| Weight {
                        radical: r.index,
                        radical_order: r.order,
                        character: c.character,
                        degree: c.degree,
                    })
            })
            .collect()
    }

    pub fn total_weights(&self) -> usize {
        self.radicals
            .iter()
            .map(|r| r.candidates.iter().filter(|c| c.induced_block.is_some()).count())
            .sum()
    }
}

/// `(|IBr(B)|, number of weights, equal)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BawCount {
    pub brauer_characters: usize,
    pub weights: usize,
    pub pass: bool,
}

pub fn baw_count_check(brauer_characters: usize, weights: &[Weight]) -> BawCount {
    BawCount {
        brauer_characters,
        weights: weights.len(),
        pass: brauer_characters == weights.len(),
    }
}
