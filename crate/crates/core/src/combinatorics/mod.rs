//! Partitions, straight and shifted tableaux, residues, and the weight
//! combinatorics that index the completely splittable modules.

mod classify;
mod partition;
mod tableau;
mod weight;

use thiserror::Error;

pub use classify::{classify, PartitionClassification};
pub use partition::{partitions, EnumMode, Node, Partition, ShapeKind};
pub use tableau::{
    enumerate_standard, residue, residue_sequence, shifted_residue, Perm, Tableau, TableauFilter,
};
pub use weight::{is_cs_weight, weight_orbit, OrbitRecord, OrbitSeed, ResidueSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("invalid partition {0:?}: {1}")]
    InvalidPartition(Vec<usize>, &'static str),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("shifted shapes need a strict partition, got {0}")]
    NotStrict(Partition),
    #[error("node {0} is not in the diagram of {1}")]
    NodeOutside(Node, Partition),
    #[error("hook length product does not divide n! for {0}")]
    InexactHookDivision(Partition),
    #[error("{shape} is not in {class} for p = {p}")]
    NotInClass {
        shape: Partition,
        class: &'static str,
        p: u32,
    },
    #[error("tableau entries do not form a bijection onto 1..=n")]
    InvalidTableau,
    #[error("residue {0} is outside 0..=(p-1)/2 for p = {1}")]
    ResidueOutOfRange(u32, u32),
    #[error("weight is not completely splittable")]
    NotCsWeight,
    #[error("tableau is not a shifted p-standard tableau")]
    NotPStandard,
}
