use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::chain::StabChain;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Default bound on the number of elements any enumeration may touch.
pub const DEFAULT_MAX_ORDER: u128 = 200_000;

/// Resource limits shared by all element-enumerating computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Limits {
    pub fn check(&self, order: u128) -> Result<()> {
        if order > self.max_order {
            Err(Error::GroupTooLarge {
                order,
                bound: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

/// A permutation group given by generators, with a lazily computed
/// stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    /// The subgroup generated by a greedy selection from `elements`: each
    /// element not yet covered becomes a generator.
    pub fn generated_by<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut group = PermGroup::trivial(degree);
        for x in elements {
            if !group.contains(x) {
                let mut gens = group.generators.clone();
                gens.push(x.clone());
                group = PermGroup {
                    degree,
                    generators: gens,
                    chain: OnceLock::new(),
                };
            }
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    /// Exact order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.chain().order().expect("group order overflows u128")
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether the group is cyclic (desk-scale: looks for an element of full order).
    pub fn is_cyclic(&self, limits: &Limits) -> Result<bool> {
        let order = self.order();
        if order == 1 {
            return Ok(true);
        }
        if !self.is_abelian() {
            return Ok(false);
        }
        if self.generators.iter().any(|g| g.order() as u128 == order) {
            return Ok(true);
        }
        Ok(self
            .elements(limits)?
            .iter()
            .any(|g| g.order() as u128 == order))
    }

    /// All elements in a deterministic order, bounded by `limits`.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Permutation>> {
        limits.check(self.order())?;
        Ok(self.chain().elements())
    }

    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.generators.iter().map(|x| x.conjugate_by(g)).collect(),
            chain: OnceLock::new(),
        }
    }

    pub fn to_file(&self, name: &str) -> GroupFile {
        GroupFile {
            name: name.to_string(),
            degree: self.degree,
            generators: self.generators.iter().map(Permutation::images_one_based).collect(),
        }
    }

    /// Generators as 1-based image arrays, for reports.
    pub fn generator_images(&self) -> Vec<Vec<u32>> {
        self.generators.iter().map(Permutation::images_one_based).collect()
    }
}

/// On-disk group description with 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("group file serializes");
        s.push('\n');
        s
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| {
                if imgs.len() != self.degree {
                    return Err(Error::InvalidPermutation(format!(
                        "generator of length {} in a group of degree {}",
                        imgs.len(),
                        self.degree
                    )));
                }
                Permutation::from_images_one_based(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens)
    }
}
