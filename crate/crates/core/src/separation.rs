//! Splitting an invariant twist into a symmetric factor and an anti-symmetric form twist.

use crate::abelian::AbelianStructure;
use crate::config::Limits;
use crate::tensor::TensorElement;
use crate::twist::{form_from_twist, twist_support, FormTwist};
use crate::{Result, TwistError};

#[derive(Debug, Clone)]
pub struct Separation {
    /// The flip-fixed factor s.
    pub symmetric: TensorElement,
    /// The anti-symmetric factor Y with s·Y = F.
    pub antisymmetric: FormTwist,
}

/// F = s·Y with flip(s) = s and Y = F_(A,α) anti-symmetric.
///
/// P = flip(F)⁻¹F equals Y², so Y is read off as the square root of the form twist P.
pub fn separate_symmetric_antisymmetric(f: &TensorElement, limits: &Limits) -> Result<Separation> {
    let p = f.flip().inverse_with(limits)?.mul(f);
    let support = twist_support(&p);
    if !support.is_abelian() || !support.is_normal() {
        return Err(TwistError::NotSeparable("flip(F)⁻¹F is not supported on a normal abelian subgroup".into()));
    }
    let a = AbelianStructure::from_subgroup(&support)?;
    if a.exponent() % 2 == 0 {
        return Err(TwistError::NotSeparable(format!("support of flip(F)⁻¹F has even exponent {}", a.exponent())));
    }
    let recovered = form_from_twist(&p, &a).map_err(|err| TwistError::NotSeparable(err.to_string()))?;
    let beta = recovered
        .group_sum
        .ok_or_else(|| TwistError::NotSeparable("flip(F)⁻¹F is not a group-sum form twist".into()))?;
    let y = FormTwist::new(a, beta.pow(2))?;
    if y.realized().mul(y.realized()) != p {
        return Err(TwistError::InternalConsistency("square root of flip(F)⁻¹F does not square back".into()));
    }
    let s = f.mul(&y.realized().inverse_with(limits)?);
    if s.flip() != s {
        return Err(TwistError::NotSeparable("F·Y⁻¹ is not flip-fixed".into()));
    }
    if s.mul(y.realized()) != *f {
        return Err(TwistError::InternalConsistency("s·Y does not reproduce F".into()));
    }
    Ok(Separation { symmetric: s, antisymmetric: y })
}
