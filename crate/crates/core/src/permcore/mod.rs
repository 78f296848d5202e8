//! Permutation-group engine: stabilizer chains, element enumeration,
//! conjugacy classes, local subgroups and coset actions.

mod chain;
mod finite;
mod group;
mod perm;

pub use chain::StabChain;
pub use finite::{subgroups_of_p_group, ConjugacyClass, CosetAction, FiniteGroup};
pub use group::{GroupFile, Limits, PermGroup, DEFAULT_MAX_ORDER};
pub use perm::Permutation;

/// Exact group order.
pub fn group_order(g: &PermGroup) -> u128 {
    g.order()
}

/// Conjugacy classes in canonical order.
pub fn conjugacy_classes(g: &PermGroup, limits: Limits) -> crate::Result<Vec<ConjugacyClass>> {
    Ok(FiniteGroup::new(g.clone(), limits)?.classes().to_vec())
}
