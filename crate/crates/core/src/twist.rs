//! Form twists F_(A,β) and their two presentations.

use std::sync::{Arc, OnceLock};

use twistlab_cyclo::{lcm, Cyclotomic};
use twistlab_groups::{FiniteGroup, Subgroup};

use crate::abelian::{AbelianStructure, Radix};
use crate::algebra::AlgebraElement;
use crate::cocycle::{trivialize_symmetric_cocycle, CochainTable};
use crate::form::PairingForm;
use crate::fourier;
use crate::lagrangian::SectionData;
use crate::tensor::TensorElement;
use crate::{Result, TwistError};

/// How a form twist is expanded into k[G]⊗k[G].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    /// |A|⁻¹ Σ β(a₁,a₂) a₁⊗a₂.
    GroupSum,
    /// Σ b(χ,ψ) p_χ⊗p_ψ with b the adjoint of (a₁,a₂) ↦ β(a₂,a₁)⁻¹.
    Idempotent,
}

/// F_(A,β) for a normal abelian subgroup A with a chosen basis.
#[derive(Clone)]
pub struct FormTwist {
    structure: AbelianStructure,
    form: PairingForm,
    realized: OnceLock<TensorElement>,
}

impl std::fmt::Debug for FormTwist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormTwist").field("structure", &self.structure).field("form", &self.form.to_string()).finish()
    }
}

impl PartialEq for FormTwist {
    fn eq(&self, other: &FormTwist) -> bool {
        self.structure == other.structure && self.form == other.form
    }
}

impl FormTwist {
    pub fn new(structure: AbelianStructure, form: PairingForm) -> Result<FormTwist> {
        if !structure.subgroup().is_normal() {
            return Err(TwistError::NotNormal);
        }
        if form.radix() != structure.radix() {
            return Err(TwistError::Hypothesis("form and subgroup have different cyclic structure".into()));
        }
        Ok(FormTwist { structure, form, realized: OnceLock::new() })
    }

    pub fn trivial(g: &Arc<FiniteGroup>) -> FormTwist {
        let a = AbelianStructure::trivial(g);
        let form = PairingForm::trivial(a.radix().clone());
        FormTwist::new(a, form).expect("trivial subgroup is normal")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.structure.group()
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    pub fn form(&self) -> &PairingForm {
        &self.form
    }

    /// Same support, different form.
    pub fn with_form(&self, form: PairingForm) -> Result<FormTwist> {
        FormTwist::new(self.structure.clone(), form)
    }

    /// The group-sum expansion, computed once.
    pub fn realized(&self) -> &TensorElement {
        self.realized.get_or_init(|| self.realize(Presentation::GroupSum).expect("group-sum always exists"))
    }

    pub fn realize(&self, presentation: Presentation) -> Result<TensorElement> {
        let a = &self.structure;
        let n = a.order();
        let e = self.form.exponent() as u32;
        match presentation {
            Presentation::GroupSum => {
                let coords: Vec<Vec<u64>> = a.radix().iter().collect();
                let mut terms = Vec::with_capacity(n * n);
                for (i, ci) in coords.iter().enumerate() {
                    for (j, cj) in coords.iter().enumerate() {
                        let v = Cyclotomic::root(e, self.form.exp(ci, cj) as i64).scale(1, n as i64);
                        terms.push((a.elements()[i], a.elements()[j], v));
                    }
                }
                Ok(TensorElement::from_terms(a.group(), terms))
            }
            Presentation::Idempotent => {
                let b = self.idempotent_form()?;
                let table: Vec<Cyclotomic> = b
                    .radix()
                    .iter()
                    .flat_map(|k| b.radix().iter().map(|l| b.value(&k, &l)).collect::<Vec<_>>())
                    .collect();
                Ok(from_dual_table(a, &table))
            }
        }
    }

    /// The form b on Â with F = Σ b(χ,ψ) p_χ⊗p_ψ.
    pub fn idempotent_form(&self) -> Result<PairingForm> {
        self.form.transpose().inverse().adjoint_dual_form()
    }
}

/// Σ table[χ,ψ] p_χ⊗p_ψ over characters of A in radix order.
pub fn from_dual_table(a: &AbelianStructure, table: &[Cyclotomic]) -> TensorElement {
    let n = a.order();
    let radix = Radix::new([a.divisors(), a.divisors()].concat());
    let coeffs = fourier::inverse(&radix, table);
    let terms = coeffs.into_iter().enumerate().map(|(i, v)| (a.elements()[i / n], a.elements()[i % n], v));
    TensorElement::from_terms(a.group(), terms)
}

/// (χ⊗ψ)(F) for every pair of characters of A; F must live on A×A.
pub fn dual_table(f: &TensorElement, a: &AbelianStructure) -> Result<Vec<Cyclotomic>> {
    let n = a.order();
    let mut vals = vec![Cyclotomic::zero(1); n * n];
    for (x, y, v) in f.terms() {
        match (a.position(x), a.position(y)) {
            (Some(i), Some(j)) => vals[i * n + j] = v.clone(),
            _ => return Err(TwistError::SupportViolation),
        }
    }
    let radix = Radix::new([a.divisors(), a.divisors()].concat());
    Ok(fourier::forward(&radix, &vals))
}

/// Σ u(χ) p_χ from values indexed by character.
pub fn from_dual_values(a: &AbelianStructure, values: &[Cyclotomic]) -> AlgebraElement {
    let coeffs = fourier::inverse(a.radix(), values);
    AlgebraElement::from_terms(a.group(), a.elements().iter().copied().zip(coeffs))
}

/// χ(u) for every character of A; u must live on A.
pub fn dual_values(u: &AlgebraElement, a: &AbelianStructure) -> Result<Vec<Cyclotomic>> {
    let mut vals = vec![Cyclotomic::zero(1); a.order()];
    for (x, v) in u.terms() {
        vals[a.position(x).ok_or(TwistError::SupportViolation)?] = v.clone();
    }
    Ok(fourier::forward(a.radix(), &vals))
}

/// Looks up k with z = ζ_n^k.
pub struct RootTable {
    n: u64,
    conductor: u32,
    roots: Vec<(Cyclotomic, u64)>,
}

impl RootTable {
    pub fn new(n: u64) -> RootTable {
        RootTable::with_conductor(n, n as u32)
    }

    fn with_conductor(n: u64, conductor: u32) -> RootTable {
        let step = (conductor as u64 / n) as i64;
        let mut roots: Vec<(Cyclotomic, u64)> =
            (0..n).map(|k| (Cyclotomic::root(conductor, k as i64 * step), k)).collect();
        roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        RootTable { n, conductor, roots }
    }

    pub fn lookup(&mut self, z: &Cyclotomic) -> Option<u64> {
        if z.is_zero() {
            return None;
        }
        let m = lcm(self.conductor as u64, z.conductor() as u64) as u32;
        if m != self.conductor {
            *self = RootTable::with_conductor(self.n, m);
        }
        let z = if z.conductor() == m { z.clone() } else { z.lift(m) };
        self.roots
            .binary_search_by(|(r, _)| r.canonical_cmp(&z))
            .ok()
            .map(|i| self.roots[i].1)
    }
}

/// Smallest subgroup S with F ∈ k[S]⊗k[S].
pub fn twist_support(f: &TensorElement) -> Subgroup {
    let (first, second) = f.legs();
    let mut gens = first;
    gens.extend(second);
    Subgroup::generated(f.group(), &gens)
}

/// Forms read off a twist supported on A×A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredForm {
    /// b with F = Σ b(χ,ψ) p_χ⊗p_ψ.
    pub dual: PairingForm,
    /// β with F = |A|⁻¹ Σ β(a₁,a₂) a₁⊗a₂, when F has that shape.
    pub group_sum: Option<PairingForm>,
}

/// Recover the coefficient forms of F over A, or report that F is not of form type.
pub fn form_from_twist(f: &TensorElement, a: &AbelianStructure) -> Result<RecoveredForm> {
    let n = a.order();
    let e = a.exponent();
    let table = dual_table(f, a)?;
    let mut roots = RootTable::new(e);
    let exps: Vec<u64> = table
        .iter()
        .map(|v| roots.lookup(v))
        .collect::<Option<_>>()
        .ok_or_else(|| TwistError::NotAFormTwist("a coefficient in the idempotent basis is not a root of unity".into()))?;
    let dual = PairingForm::from_table(a.radix().clone(), e, &exps)
        .map_err(|_| TwistError::NotAFormTwist("idempotent coefficients are not bi-multiplicative".into()))?;
    let mut gs = Vec::with_capacity(n * n);
    let mut ok = true;
    for &x in a.elements() {
        for &y in a.elements() {
            match roots.lookup(&f.coeff(x, y).scale(n as i64, 1)) {
                Some(k) => gs.push(k),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
    }
    let group_sum = if ok { PairingForm::from_table(a.radix().clone(), e, &gs).ok() } else { None };
    Ok(RecoveredForm { dual, group_sum })
}

/// flip(F)·F = 1⊗1.
pub fn is_antisymmetric(f: &TensorElement) -> bool {
    f.flip().mul(f) == TensorElement::one(f.group())
}

/// The twist Y on the same support with Y·Y = F_(A,α): Y = F_(A,α²).
pub fn sqrt_form_twist(t: &FormTwist) -> Result<FormTwist> {
    let e = t.form().exponent();
    if e.is_multiple_of(2) {
        return Err(TwistError::EvenExponent(e));
    }
    let y = t.with_form(t.form().pow(2))?;
    if y.realized().mul(y.realized()) != *t.realized() {
        return Err(TwistError::InternalConsistency("square root does not square back".into()));
    }
    Ok(y)
}

/// A u ∈ k[A], diagonal in the idempotents of A, with (u⊗u)Δ(u)⁻¹ = Q.
pub fn diagonal_gauge_solve(q: &TensorElement, a: &AbelianStructure) -> Result<Option<AlgebraElement>> {
    let e = a.exponent();
    let table = match dual_table(q, a) {
        Ok(t) => t,
        Err(TwistError::SupportViolation) => return Ok(None),
        Err(err) => return Err(err),
    };
    // coefficient of p_χ⊗p_ψ is u(χ)u(ψ)/u(χψ); its inverse is the symmetric cocycle to trivialize
    let mut roots = RootTable::new(2 * e);
    let mut exps = Vec::with_capacity(table.len());
    for v in &table {
        match roots.lookup(v) {
            Some(k) => exps.push((2 * e - k) % (2 * e)),
            None => return Ok(None),
        }
    }
    let cochain = CochainTable::new(a.radix().clone(), 2 * e, exps);
    if !cochain.is_symmetric() {
        return Ok(None);
    }
    let u = match trivialize_symmetric_cocycle(&cochain, true) {
        Ok(u) => u,
        Err(TwistError::Hypothesis(_)) => return Ok(None),
        Err(err) => return Err(err),
    };
    let values: Vec<Cyclotomic> = u.values.iter().map(|&k| Cyclotomic::root(u.modulus as u32, k as i64)).collect();
    Ok(Some(from_dual_values(a, &values)))
}

/// Σ_{χ,ψ∈B̂} β̄(χ,ψ) p_ψ s(χ) ⊗ p_{χ⁻¹} s(ψ) for a Lagrangian B ⊂ A with section s.
pub fn twlag_element(t: &FormTwist, section: &SectionData) -> Result<TensorElement> {
    let a = t.structure();
    let g = a.group();
    let b_gens: Vec<usize> = section.b_basis.iter().map(|c| a.element_at(c)).collect();
    let b_sub = Subgroup::generated(g, &b_gens);
    let b = AbelianStructure::with_generators(&b_sub, &b_gens)?;
    if b.divisors() != section.b_radix.divisors() {
        return Err(TwistError::InternalConsistency("B basis changed orders".into()));
    }
    let e = t.form().exponent() as u32;
    let n = section.b_radix.size();
    let idem: Vec<AlgebraElement> =
        section.b_radix.iter().map(|k| crate::algebra::idempotent_of_character(&b, &k)).collect();
    let s: Vec<usize> = section.section.iter().map(|c| a.element_at(c)).collect();
    let mut terms = Vec::new();
    for chi in 0..n {
        let chi_inv = section.b_radix.index(&section.b_radix.neg(&section.b_radix.coords(chi)));
        for psi in 0..n {
            let left = idem[psi].mul(&AlgebraElement::basis(g, s[chi]));
            let right = idem[chi_inv].mul(&AlgebraElement::basis(g, s[psi]));
            let coeff = Cyclotomic::root(e, section.beta_bar[chi * n + psi] as i64);
            for (x, u) in left.terms() {
                for (y, v) in right.terms() {
                    terms.push((x, y, &(u * v) * &coeff));
                }
            }
        }
    }
    Ok(TensorElement::from_terms(g, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_table_finds_exponents_across_conductors() {
        let mut t = RootTable::new(5);
        assert_eq!(t.lookup(&Cyclotomic::root(5, 3)), Some(3));
        assert_eq!(t.lookup(&Cyclotomic::root(5, 2).lift(20)), Some(2));
        assert_eq!(t.lookup(&Cyclotomic::root(4, 1)), None);
        assert_eq!(t.lookup(&Cyclotomic::from_i64(1, 2)), None);
    }
}
