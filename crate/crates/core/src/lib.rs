//! The twist calculus on group algebras k[G] over cyclotomic fields.
//!
//! Layers, bottom up:
//! * [`abelian`], [`form`], [`lagrangian`], [`cocycle`]: finite abelian
//!   groups, characters and bi-multiplicative forms;
//! * [`algebra`], [`tensor`], [`hopf`]: k[G], k[G]⊗k[G] and the Hopf
//!   structure maps, with exact checks of the Drinfeld twist axioms;
//! * [`twist`] and the modules after it: form twists, composition,
//!   commutators, class-preserving automorphisms and separation.

pub mod abelian;
pub mod algebra;
pub mod circ;
pub mod classpres;
pub mod cocycle;
pub mod commutator;
pub mod config;
pub mod form;
pub mod fourier;
pub mod hopf;
pub mod lagrangian;
mod linalg;
pub mod separation;
pub mod skew;
pub mod tensor;
pub mod triangular;
pub mod twist;
pub mod twisted_hom;

pub use abelian::{AbelianStructure, Character, Radix};
pub use algebra::AlgebraElement;
pub use config::Limits;
pub use form::{FormFlags, PairingForm};
pub use tensor::{TensorElement, TripleTensor};
pub use twist::{FormTwist, Presentation};

use thiserror::Error;
use twistlab_cyclo::CycloError;
use twistlab_groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("not a form twist over the given subgroup: {0}")]
    NotAFormTwist(String),
    #[error("form is degenerate")]
    Degenerate,
    #[error("operation needs odd exponent, got {0}")]
    EvenExponent(u64),
    #[error("ambient group has even order {0}")]
    EvenOrder(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{what} needs {size} but the cap is {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("tensor support leaves the subgroup")]
    SupportViolation,
    #[error("extension obstruction: {0}")]
    Obstruction(String),
    #[error("not separable by this procedure: {0}")]
    NotSeparable(String),
    #[error("solve failed: {0}")]
    SolveFailed(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl TwistError {
    /// Errors that contradict a proven identity rather than reject input.
    pub fn is_internal(&self) -> bool {
        matches!(self, TwistError::InternalConsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, TwistError>;
