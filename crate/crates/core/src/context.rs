use std::path::PathBuf;

use crate::chartab::{class_fusion, load_or_compute, CharacterTable, ClassFusion};
use crate::error::Result;
use crate::permcore::{FiniteGroup, Limits, PermGroup};

/// Settings shared by every group built during one computation.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub limits: Limits,
    pub cache_dir: Option<PathBuf>,
}

impl Session {
    pub fn new(limits: Limits, cache_dir: Option<PathBuf>) -> Self {
        Session { limits, cache_dir }
    }

    /// Enumerates `group` and attaches its character table.
    pub fn tabled(&self, name: &str, group: &PermGroup) -> Result<TabledGroup> {
        let group = FiniteGroup::new(group.clone(), self.limits)?;
        let table = load_or_compute(&group, name, self.cache_dir.as_deref())?;
        Ok(TabledGroup {
            name: name.to_string(),
            group,
            table,
        })
    }
}

/// An enumerated group together with its character table.
#[derive(Debug)]
pub struct TabledGroup {
    pub name: String,
    pub group: FiniteGroup,
    pub table: CharacterTable,
}

impl TabledGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    /// Fusion of the classes of a subgroup into this group.
    pub fn fusion_from(&self, sub: &TabledGroup) -> Result<ClassFusion> {
        class_fusion(&sub.group, &self.group)
    }
}

/// `G/N` realized by the action on the cosets of a normal subgroup `N`.
#[derive(Debug)]
pub struct Quotient {
    pub image: TabledGroup,
    /// Image class of each class of G.
    pub class_map: Vec<usize>,
    /// Index in Irr(G) of the inflation of each character of G/N.
    pub inflation: Vec<usize>,
}

impl Quotient {
    pub fn new(session: &Session, g: &TabledGroup, n: &PermGroup, name: &str) -> Result<Self> {
        if n.is_trivial() {
            let image = session.tabled(name, g.group.group())?;
            return Ok(Quotient {
                class_map: (0..g.table.num_classes()).collect(),
                inflation: (0..g.table.characters().len()).collect(),
                image,
            });
        }
        let action = g.group.coset_action(n)?;
        if action.kernel.order() != n.order() {
            return Err(crate::Error::InvalidInput("subgroup is not normal".into()));
        }
        let image = session.tabled(name, &action.image)?;
        let class_map = g
            .group
            .classes()
            .iter()
            .map(|c| {
                image
                    .group
                    .class_of(&action.image_of(&c.representative))
                    .expect("image lies in the quotient")
            })
            .collect::<Vec<_>>();
        let inflation = image
            .table
            .characters()
            .iter()
            .map(|row| {
                let lifted: Vec<_> = class_map.iter().map(|&k| row[k].clone()).collect();
                g.table.find_character(&lifted).ok_or_else(|| {
                    crate::Error::InternalInconsistency("inflated character is not irreducible".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Quotient {
            image,
            class_map,
            inflation,
        })
    }
}
