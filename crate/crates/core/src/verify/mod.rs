//! Counting-level checks on blocks: Alperin–McKay, the Isaacs–Navarro
//! congruence, weight counts, Brauer's first main theorem, and
//! equivariance under supplied automorphisms.

mod matching;
mod report;

pub use matching::maximum_matching;
pub use report::{full_group_report, render_text, BlockResult, ErrorEntry, Status, VerificationReport, VerifyOptions};

use serde::Serialize;

use crate::arith;
use crate::blocks::{block_partition, brauer_induced_block, height_zero, Block, BlockPartition};
use crate::context::{Session, TabledGroup};
use crate::cyclicblocks::{analyze_cyclic_block, p_rational_members};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

/// `N_G(D)` with its blocks; borrows G when the two coincide.
pub struct LocalGroup<'a> {
    owned: Option<(TabledGroup, BlockPartition)>,
    global: (&'a TabledGroup, &'a BlockPartition),
}

impl LocalGroup<'_> {
    pub fn group(&self) -> &TabledGroup {
        self.owned.as_ref().map_or(self.global.0, |o| &o.0)
    }

    pub fn blocks(&self) -> &BlockPartition {
        self.owned.as_ref().map_or(self.global.1, |o| &o.1)
    }

    fn induced(&self, b: usize) -> Result<Option<usize>> {
        let (g, g_blocks) = self.global;
        let n = self.group();
        brauer_induced_block(n, &self.blocks().blocks[b], g, g_blocks, &g.fusion_from(n)?)
    }
}

pub fn normalizer_of<'a>(
    session: &Session,
    g: &'a TabledGroup,
    g_blocks: &'a BlockPartition,
    d: &PermGroup,
) -> Result<LocalGroup<'a>> {
    let n = g.group.normalizer(d)?;
    let owned = if n.order() == g.order() {
        None
    } else {
        let n = session.tabled(&format!("N_{}(D)", g.name), &n)?;
        let blocks = block_partition(&n, g_blocks.prime)?;
        Some((n, blocks))
    };
    Ok(LocalGroup {
        owned,
        global: (g, g_blocks),
    })
}

/// The block `b` of `N_G(D)` with defect group `D` and `b^G = B`.
pub fn brauer_correspondent<'a>(
    session: &Session,
    g: &'a TabledGroup,
    g_blocks: &'a BlockPartition,
    block: &Block,
) -> Result<(LocalGroup<'a>, usize)> {
    let local = normalizer_of(session, g, g_blocks, &block.defect_group)?;
    for b in &local.blocks().blocks {
        if b.defect == block.defect && local.induced(b.index)? == Some(block.index) {
            let index = b.index;
            return Ok((local, index));
        }
    }
    Err(Error::CorrespondentNotFound)
}

#[derive(Clone, Debug, Serialize)]
pub struct AmCheck {
    pub normalizer_order: u128,
    pub correspondent: usize,
    pub correspondent_characters: Vec<usize>,
    pub correspondent_degrees: Vec<u64>,
    pub height_zero: Vec<usize>,
    pub correspondent_height_zero: Vec<usize>,
    pub pass: bool,
}

/// `|Irr_0(B)| = |Irr_0(B')|` for the Brauer correspondent `B'`.
pub fn am_check(g: &TabledGroup, block: &Block, local: &LocalGroup, correspondent: usize) -> AmCheck {
    let n = local.group();
    let b = &local.blocks().blocks[correspondent];
    let irr0 = height_zero(&g.table, block);
    let irr0_local = height_zero(&n.table, b);
    AmCheck {
        normalizer_order: n.order(),
        correspondent,
        correspondent_characters: b.characters.clone(),
        correspondent_degrees: b.characters.iter().map(|&c| n.table.degree(c)).collect(),
        pass: irr0.len() == irr0_local.len(),
        height_zero: irr0,
        correspondent_height_zero: irr0_local,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InPair {
    pub character: usize,
    pub degree: u64,
    pub correspondent: usize,
    pub correspondent_degree: u64,
    /// The sign in `chi'(1)_{p'} = sign * c * chi(1)_{p'} (mod p)`.
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct InCheck {
    /// `|G : N_G(D)|_{p'}`.
    pub c: u64,
    /// Whether exceptional characters were required to match exceptional ones.
    pub exceptional_constraint: bool,
    pub matching: Vec<InPair>,
    pub pass: bool,
}

fn congruence_sign(a: u64, b: u64, c: u64, p: u64) -> Option<i8> {
    let target = ((c % p) as u128 * b as u128 % p as u128) as u64;
    let a = a % p;
    if a == target {
        Some(1)
    } else if (a + target) % p == 0 {
        Some(-1)
    } else {
        None
    }
}

/// Looks for a bijection `Irr_0(B) -> Irr_0(B')` respecting the congruence
/// `chi'(1)_{p'} = +-c chi(1)_{p'} (mod p)`, with a sign per pair.
pub fn in_refinement_check(
    session: &Session,
    g: &TabledGroup,
    g_blocks: &BlockPartition,
    block: &Block,
    local: &LocalGroup,
    correspondent: usize,
) -> InCheck {
    let p = block.prime;
    let n = local.group();
    let b = &local.blocks().blocks[correspondent];
    let c = arith::p_prime_part(p, g.order() / n.order()) as u64;
    let left = height_zero(&g.table, block);
    let right = height_zero(&n.table, b);

    let g_data = analyze_cyclic_block(session, g, g_blocks, block).ok();
    let n_data = analyze_cyclic_block(session, n, local.blocks(), b).ok();
    let exceptional = match (&g_data, &n_data) {
        (Some(x), Some(y)) if x.exceptional_intrinsic && y.exceptional_intrinsic => {
            Some((x.exceptional.clone(), y.exceptional.clone()))
        }
        _ => None,
    };

    let degree_part = |t: &TabledGroup, chi: usize| arith::p_prime_part(p, t.table.degree(chi) as u128) as u64 % p;
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&chi| {
            (0..right.len())
                .filter(|&j| {
                    let psi = right[j];
                    if let Some((exc, exc_local)) = &exceptional {
                        if exc.contains(&chi) != exc_local.contains(&psi) {
                            return false;
                        }
                    }
                    congruence_sign(degree_part(n, psi), degree_part(g, chi), c, p).is_some()
                })
                .collect()
        })
        .collect();
    let mate = maximum_matching(&adj, right.len());
    let pass = left.len() == right.len() && mate.iter().all(Option::is_some);
    let matching = left
        .iter()
        .zip(&mate)
        .filter_map(|(&chi, m)| {
            let psi = right[(*m)?];
            Some(InPair {
                character: chi,
                degree: g.table.degree(chi),
                correspondent: psi,
                correspondent_degree: n.table.degree(psi),
                sign: congruence_sign(degree_part(n, psi), degree_part(g, chi), c, p)?,
            })
        })
        .collect();
    InCheck {
        c,
        exceptional_constraint: exceptional.is_some(),
        matching,
        pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstMainCheck {
    pub defect_group_order: u128,
    pub defect_group_generators: Vec<Vec<u32>>,
    pub normalizer_order: u128,
    /// Blocks of `N_G(D)` with defect group `D`.
    pub local_blocks: Vec<usize>,
    /// Blocks of G with a defect group conjugate to `D`.
    pub global_blocks: Vec<usize>,
    /// `b^G` for every local block, in order.
    pub induced: Vec<Option<usize>>,
    pub pass: bool,
}

/// Whether `b -> b^G` is a bijection from `Bl(N_G(D) | D)` onto `Bl(G | D)`.
pub fn first_main_check(
    session: &Session,
    g: &TabledGroup,
    g_blocks: &BlockPartition,
    d: &PermGroup,
) -> Result<FirstMainCheck> {
    let p = g_blocks.prime;
    let defect = arith::nu(p, d.order());
    let local = normalizer_of(session, g, g_blocks, d)?;
    // D is normal in N_G(D), so every block of full defect |D| has defect group D.
    let local_blocks: Vec<usize> = local
        .blocks()
        .blocks
        .iter()
        .filter(|b| b.defect == defect)
        .map(|b| b.index)
        .collect();
    let global_blocks: Vec<usize> = g_blocks
        .blocks
        .iter()
        .filter(|b| b.defect == defect && g.group.are_conjugate(&b.defect_group, d))
        .map(|b| b.index)
        .collect();
    let induced = local_blocks
        .iter()
        .map(|&b| local.induced(b))
        .collect::<Result<Vec<_>>>()?;
    let mut images: Vec<usize> = induced.iter().flatten().copied().collect();
    images.sort_unstable();
    images.dedup();
    let pass = induced.iter().all(Option::is_some) && images.len() == induced.len() && images == global_blocks;
    Ok(FirstMainCheck {
        defect_group_order: d.order(),
        defect_group_generators: d.generator_images(),
        normalizer_order: local.group().order(),
        local_blocks,
        global_blocks,
        induced,
        pass,
    })
}

/// Image of every irreducible character under conjugation by `a`, which
/// must normalize the group.
pub fn character_action(t: &TabledGroup, a: &Permutation) -> Result<Vec<usize>> {
    let classes = t.group.classes();
    let sigma = classes
        .iter()
        .map(|k| t.group.class_of(&k.representative.conjugate_by(a)).ok_or(Error::NotAnAutomorphism))
        .collect::<Result<Vec<_>>>()?;
    (0..t.table.characters().len())
        .map(|chi| {
            let row: Vec<CycNum> = sigma.iter().map(|&k| t.table.character(chi)[k].clone()).collect();
            t.table
                .find_character(&row)
                .ok_or_else(|| Error::InternalInconsistency("conjugate character not found".into()))
        })
        .collect()
}

fn normalizes(g: &PermGroup, a: &Permutation) -> bool {
    a.degree() == g.degree() && g.generators().iter().all(|s| g.contains(&s.conjugate_by(a)))
}

fn maps_into(perm: &[usize], set: &[usize]) -> bool {
    set.iter().all(|c| set.contains(&perm[*c]))
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismCheck {
    pub index: usize,
    pub checked: bool,
    pub notice: Option<String>,
    /// Image of each block member, in member order.
    pub member_images: Vec<usize>,
    pub partition_preserved: Option<bool>,
    pub two_rational_fixed: Option<bool>,
    pub height_zero_preserved: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub block: usize,
    pub automorphisms: Vec<AutomorphismCheck>,
    pub pass: bool,
}

/// Checks that conjugation by each supplied permutation respects the
/// exceptional/non-exceptional split, fixes the 2-rational members when
/// `p = 2`, and preserves height-zero characters on both sides of the
/// Brauer correspondence. Automorphisms not stabilizing `B` are skipped.
pub fn equivariance_spot_check(
    session: &Session,
    g: &TabledGroup,
    g_blocks: &BlockPartition,
    block: &Block,
    autos: &[Permutation],
) -> Result<EquivarianceReport> {
    for a in autos {
        if !normalizes(g.group.group(), a) {
            return Err(Error::NotAnAutomorphism);
        }
    }
    let data = if block.defect > 0 {
        analyze_cyclic_block(session, g, g_blocks, block).ok()
    } else {
        None
    };
    let irr0 = height_zero(&g.table, block);
    let (local, correspondent) = brauer_correspondent(session, g, g_blocks, block)?;
    let irr0_local = height_zero(&local.group().table, &local.blocks().blocks[correspondent]);
    let d = &block.defect_group;

    let mut checks = Vec::new();
    for (index, a) in autos.iter().enumerate() {
        let perm = character_action(g, a)?;
        let member_images: Vec<usize> = block.characters.iter().map(|&c| perm[c]).collect();
        let skipped = |notice: &str| AutomorphismCheck {
            index,
            checked: false,
            notice: Some(notice.to_string()),
            member_images: member_images.clone(),
            partition_preserved: None,
            two_rational_fixed: None,
            height_zero_preserved: None,
            pass: true,
        };
        if !maps_into(&perm, &block.characters) {
            checks.push(skipped("does not stabilize the block"));
            continue;
        }
        // Adjust by an inner automorphism so that D is stabilized.
        let Some(inner) = g.group.conjugating_element(&d.conjugate_by(a), d) else {
            checks.push(skipped("no conjugate stabilizes the defect group"));
            continue;
        };
        let a_d = a.then(&inner);
        let n = local.group();
        if !normalizes(n.group.group(), &a_d) {
            return Err(Error::InternalInconsistency("adjusted automorphism does not normalize N_G(D)".into()));
        }
        let local_perm = character_action(n, &a_d)?;

        let partition_preserved = data
            .as_ref()
            .filter(|x| x.exceptional_intrinsic)
            .map(|x| maps_into(&perm, &x.exceptional));
        let two_rational_fixed = (block.prime == 2 && data.is_some()).then(|| {
            p_rational_members(g, block).iter().all(|&c| perm[c] == c)
        });
        let height_zero_preserved = Some(maps_into(&perm, &irr0) && maps_into(&local_perm, &irr0_local));
        let pass = [partition_preserved, two_rational_fixed, height_zero_preserved]
            .iter()
            .all(|x| x.unwrap_or(true));
        checks.push(AutomorphismCheck {
            index,
            checked: true,
            notice: None,
            member_images,
            partition_preserved,
            two_rational_fixed,
            height_zero_preserved,
            pass,
        });
    }
    Ok(EquivarianceReport {
        block: block.index,
        pass: checks.iter().all(|c| c.pass),
        automorphisms: checks,
    })
}
