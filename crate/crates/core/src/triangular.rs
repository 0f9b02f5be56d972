//! Triangular structures on k[G]: normal abelian A with a non-degenerate skew-symmetric invariant form.

use std::sync::Arc;

use twistlab_groups::{enumerate_normal_abelian_subgroups, FiniteGroup};

use crate::abelian::AbelianStructure;
use crate::circ::ambient_actions;
use crate::config::Limits;
use crate::form::{enumerate_invariant_forms, FormRequirements, PairingForm};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct TriangularStructure {
    pub structure: AbelianStructure,
    pub form: PairingForm,
}

/// All pairs (A, α), ordered by subgroup (order, then members) and then by form matrix.
pub fn enumerate_triangular_structures(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<Vec<TriangularStructure>> {
    let mut out = Vec::new();
    for sub in enumerate_normal_abelian_subgroups(g, limits.closure_cap)? {
        let structure = AbelianStructure::from_subgroup(&sub)?;
        let req = FormRequirements {
            alternating: false,
            skew_symmetric: true,
            nondegenerate: true,
            invariant_under: ambient_actions(&structure)?,
        };
        for form in enumerate_invariant_forms(structure.radix(), &req, limits.enum_cap)? {
            out.push(TriangularStructure { structure: structure.clone(), form });
        }
    }
    Ok(out)
}
