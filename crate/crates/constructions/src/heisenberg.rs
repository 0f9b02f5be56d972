//! Heisenberg groups of order p³ as unipotent 3×3 matrices over F_p.

use std::sync::Arc;

use twistlab_core::{AbelianStructure, FormTwist, Limits, PairingForm};
use twistlab_groups::{FiniteGroup, MatrixRule, Subgroup};

use crate::{ConstructionError, Result};

/// H(E,b) for E = F_p² with [x,y] = c and b(x,y) = 1.
#[derive(Debug, Clone)]
pub struct Heisenberg {
    pub p: u32,
    pub group: Arc<FiniteGroup>,
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

/// Encoding of [[1,a,c],[0,1,b],[0,0,1]].
fn unipotent(a: u32, b: u32, c: u32) -> Vec<u8> {
    vec![1, a as u8, c as u8, 0, 1, b as u8, 0, 0, 1]
}

pub fn heisenberg(p: u32, limits: &Limits) -> Result<Heisenberg> {
    if p == 2 {
        return Err(ConstructionError::InvalidParameter("the Heisenberg construction needs an odd prime, got 2".into()));
    }
    if !(3..=251).contains(&p) || (2..p).any(|q| q * q <= p && p.is_multiple_of(q)) {
        return Err(ConstructionError::InvalidParameter(format!("{p} is not an odd prime below 256")));
    }
    let rule = Arc::new(MatrixRule { p: p as u8, dim: 3 });
    let (ex, ey, ec) = (unipotent(1, 0, 0), unipotent(0, 1, 0), unipotent(0, 0, 1));
    let g = FiniteGroup::closure(&format!("heisenberg({p})"), rule, &[ex.clone(), ey.clone()], limits.closure_cap, limits.table_cap)?;
    let idx = |e: &[u8]| g.index_of(e).expect("element of the closure");
    let (x, y, c) = (idx(&ex), idx(&ey), idx(&ec));
    if g.commutator(x, y) != c {
        return Err(ConstructionError::Internal("[x,y] is not the central generator".into()));
    }
    let g = g.with_generators(vec![x, y])?;
    Ok(Heisenberg { p, group: Arc::new(g), x, y, c })
}

impl Heisenberg {
    /// The twist F over ⟨gen, c⟩ with the standard alternating form.
    pub fn standard_twist(&self, gen: usize) -> Result<FormTwist> {
        let sub = Subgroup::generated(&self.group, &[gen, self.c]);
        let a = AbelianStructure::with_generators(&sub, &[gen, self.c])?;
        let form = PairingForm::new(a.radix().clone(), vec![vec![0, 1], vec![-1, 0]])?;
        Ok(FormTwist::new(a, form)?)
    }

    pub fn twist_x(&self) -> Result<FormTwist> {
        self.standard_twist(self.x)
    }

    pub fn twist_y(&self) -> Result<FormTwist> {
        self.standard_twist(self.y)
    }

    /// b(x,y) as an exponent of ζ_p.
    pub fn b(&self) -> u64 {
        1
    }
}
