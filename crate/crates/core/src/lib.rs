pub mod arith;
pub mod blocks;
pub mod chartab;
pub mod context;
pub mod cyclicblocks;
pub mod cyclo;
pub mod error;
pub mod lietype;
pub mod permcore;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use chartab::{CharacterTable, ClassFusion};
pub use cyclo::{CycNum, FiniteFieldElem};
pub use permcore::{ConjugacyClass, FiniteGroup, GroupFile, Limits, PermGroup, Permutation};
