//! Finite groups with exact multiplication and the structural algorithms
//! the twist calculus needs: closure, conjugacy classes, normal abelian
//! subgroups, automorphism groups and fingerprints.
//!
//! Elements are always addressed by index. Indices follow the
//! lexicographic order of the canonical encodings for structured groups,
//! so every run sees the same numbering.

mod abelian;
mod automorphism;
mod classes;
mod fingerprint;
mod group;
mod morphism;
mod rules;
mod spec;
mod subgroup;

pub use abelian::{decompose_abelian, CyclicDecomposition};
pub use automorphism::{automorphism_group, class_preserving_filter, ClassPreserving};
pub use classes::{center, conjugacy_classes};
pub use fingerprint::{fingerprint, fingerprints_differ, GroupFingerprint};
pub use group::{FiniteGroup, GroupRule, DEFAULT_CLOSURE_CAP, DEFAULT_TABLE_CAP};
pub use morphism::GroupMorphism;
pub use rules::{MatrixRule, PermutationRule};
pub use spec::{parse_group_spec, GroupSpec, GroupSpecBody, SpecError};
pub use subgroup::{enumerate_normal_abelian_subgroups, Subgroup};

use thiserror::Error;

pub const DEFAULT_AUT_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure too large: more than {cap} elements (reached {reached} before stopping)")]
    ClosureTooLarge { cap: usize, reached: usize },
    #[error("group order {order} exceeds the cap {cap} for {what}")]
    CapExceeded { what: &'static str, order: usize, cap: usize },
    #[error("invalid multiplication table: {0}")]
    BadTable(String),
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("generators disagree on their encoding length or act on different sets")]
    IncompatibleGenerators,
}
