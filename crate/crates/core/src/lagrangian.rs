//! Lagrangian subgroups, the decomposition A ≅ B ⊕ B̂, and sections of A → B̂.

use std::collections::{HashMap, HashSet};

use twistlab_cyclo::inverse_mod;
use twistlab_groups::decompose_abelian;

use crate::abelian::Radix;
use crate::form::PairingForm;
use crate::{Result, TwistError};

/// A symplectic basis (aᵢ, cᵢ): β(cᵢ, aⱼ) = ζ_{dᵢ}^{δᵢⱼ}, all other basis pairs
/// orthogonal, B = ⟨aᵢ⟩ Lagrangian and cᵢ lifting the dual basis of B̂.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianDecomposition {
    pub b_basis: Vec<Vec<u64>>,
    pub dual_lifts: Vec<Vec<u64>>,
    /// Orders dᵢ of the aᵢ (and of the cᵢ).
    pub b_radix: Radix,
}

impl LagrangianDecomposition {
    /// A-coordinates of (x, χ) with x ∈ B and χ ∈ B̂ in the produced coordinates.
    pub fn element(&self, radix: &Radix, x: &[u64], chi: &[u64]) -> Vec<u64> {
        let mut out = vec![0; radix.rank()];
        for (i, (&xi, &ki)) in x.iter().zip(chi).enumerate() {
            out = radix.add(&out, &radix.scale(&self.b_basis[i], xi as i64));
            out = radix.add(&out, &radix.scale(&self.dual_lifts[i], ki as i64));
        }
        out
    }

    /// Members of B.
    pub fn b_members(&self, radix: &Radix) -> Vec<Vec<u64>> {
        let zero = vec![0; self.b_radix.rank()];
        let mut out: Vec<Vec<u64>> = self.b_radix.iter().map(|x| self.element(radix, &x, &zero)).collect();
        out.sort();
        out
    }

    /// β((x,χ),(y,ψ)) = χ(y)ψ(x)⁻¹ on every pair, and the coordinates are bijective.
    pub fn verify(&self, form: &PairingForm) -> bool {
        let radix = form.radix();
        let e = form.exponent();
        let eb = self.b_radix.exponent();
        if !e.is_multiple_of(eb) {
            return false;
        }
        let pairs: Vec<(Vec<u64>, Vec<u64>)> = self
            .b_radix
            .iter()
            .flat_map(|x| self.b_radix.iter().map(move |k| (x.clone(), k)))
            .collect();
        let images: Vec<Vec<u64>> = pairs.iter().map(|(x, k)| self.element(radix, x, k)).collect();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != radix.size() {
            return false;
        }
        let scale = e / eb;
        pairs.iter().zip(&images).all(|((x, k), u)| {
            pairs.iter().zip(&images).all(|((y, l), v)| {
                let expected = (self.b_radix.pairing_exp(k, y) + eb - self.b_radix.pairing_exp(l, x)) % eb * scale;
                form.exp(u, v) == expected
            })
        })
    }
}

/// Split off hyperbolic planes ⟨a, a'⟩ with a of maximal order, recursing on the complement.
pub fn lagrangian_decomposition(form: &PairingForm) -> Result<LagrangianDecomposition> {
    if !form.is_alternating() {
        return Err(TwistError::Hypothesis("form is not alternating".into()));
    }
    if !form.is_nondegenerate() {
        return Err(TwistError::Degenerate);
    }
    let radix = form.radix();
    let e = form.exponent();
    let mut w: Vec<Vec<u64>> = radix.iter().collect();
    let mut b_basis = Vec::new();
    let mut dual_lifts = Vec::new();
    let mut orders = Vec::new();
    while w.len() > 1 {
        let a = w
            .iter()
            .max_by(|x, y| radix.order_of(x).cmp(&radix.order_of(y)).then(y.cmp(x)))
            .expect("nonempty")
            .clone();
        let d = radix.order_of(&a);
        let partner = w
            .iter()
            .find(|y| form.value_order(y, &a) == d)
            .ok_or_else(|| TwistError::InternalConsistency("no partner in a nondegenerate block".into()))?;
        // normalise so that β(c, a) = ζ_d
        let m = form.exp(partner, &a) / (e / d);
        let u = inverse_mod(m as i64, d as i64).expect("unit") as i64;
        let c = radix.scale(partner, u);
        w.retain(|y| form.exp(y, &a) == 0 && form.exp(y, &c) == 0);
        b_basis.push(a);
        dual_lifts.push(c);
        orders.push(d);
    }
    Ok(LagrangianDecomposition { b_basis, dual_lifts, b_radix: Radix::new(orders) })
}

/// A set-theoretic section s: B̂ → A of a ↦ β(a,·)|_B, its cocycle Γ and β̄.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionData {
    /// Basis of B in A-coordinates; characters of B use this basis.
    pub b_basis: Vec<Vec<u64>>,
    pub b_radix: Radix,
    /// s(χ) indexed by character index in `b_radix`.
    pub section: Vec<Vec<u64>>,
    /// Γ(χ,ψ) = s(χψ) − s(χ) − s(ψ) ∈ B, row-major over character indices.
    pub gamma: Vec<Vec<u64>>,
    /// β̄(χ,ψ) = β(s(χ), s(ψ)) as exponents of ζ_e.
    pub beta_bar: Vec<u64>,
}

impl SectionData {
    pub fn gamma_is_trivial(&self) -> bool {
        self.gamma.iter().all(|g| g.iter().all(|&v| v == 0))
    }

    /// Γ(χ,ψ) + Γ(χψ,ξ) = Γ(ψ,ξ) + Γ(χ,ψξ).
    pub fn cocycle_identity_holds(&self, radix: &Radix) -> bool {
        let n = self.b_radix.size();
        let mul = |i: usize, j: usize| {
            self.b_radix.index(&self.b_radix.add(&self.b_radix.coords(i), &self.b_radix.coords(j)))
        };
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    radix.add(&self.gamma[x * n + y], &self.gamma[mul(x, y) * n + z])
                        == radix.add(&self.gamma[y * n + z], &self.gamma[x * n + mul(y, z)])
                })
            })
        })
    }

    /// Whether 0 → B → A → B̂ → 0 splits: every basis character must have a
    /// lift whose order divides the character's order.
    pub fn extension_splits(&self, radix: &Radix) -> bool {
        let b_members = span(radix, &self.b_basis);
        (0..self.b_radix.rank()).all(|i| {
            let unit = self.b_radix.unit(i);
            let d = self.b_radix.divisors()[i];
            let s = &self.section[self.b_radix.index(&unit)];
            b_members.iter().any(|b| d.is_multiple_of(radix.order_of(&radix.add(s, b))))
        })
    }
}

/// All elements of the span of the given vectors.
pub fn span(radix: &Radix, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut members = vec![vec![0; radix.rank()]];
    for g in gens {
        let mut next = members.clone();
        let mut frontier = members.clone();
        loop {
            let shifted: Vec<Vec<u64>> =
                frontier.iter().map(|m| radix.add(m, g)).filter(|m| !next.contains(m)).collect();
            if shifted.is_empty() {
                break;
            }
            next.extend(shifted.iter().cloned());
            frontier = shifted;
        }
        members = next;
    }
    members.sort();
    members.dedup();
    members
}

/// Greedy section by character index: s(χ) is the least A-element inducing χ on B.
pub fn section_with_cocycle(form: &PairingForm, b_members: &[Vec<u64>]) -> Result<SectionData> {
    if !form.is_lagrangian(b_members) {
        return Err(TwistError::Hypothesis("subgroup is not Lagrangian".into()));
    }
    let radix = form.radix();
    let e = form.exponent();
    let idx: Vec<usize> = b_members.iter().map(|m| radix.index(m)).collect();
    let dec = decompose_abelian(&idx, 0, &|a, b| radix.index(&radix.add(&radix.coords(a), &radix.coords(b))));
    let b_basis: Vec<Vec<u64>> = dec.generators.iter().map(|&g| radix.coords(g)).collect();
    let b_radix = Radix::new(dec.divisors.clone());
    // character of B induced by a, in dual-basis coordinates
    let induced = |a: &[u64]| -> Vec<u64> {
        b_basis
            .iter()
            .zip(b_radix.divisors())
            .map(|(g, &d)| {
                let ex = form.exp(a, g);
                // ζ_e^{ex} = ζ_d^{k}
                ex / (e / d) % d
            })
            .collect()
    };
    let b_set: HashSet<&Vec<u64>> = b_members.iter().collect();
    let mut first: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for a in radix.iter() {
        first.entry(induced(&a)).or_insert(a);
    }
    let n = b_radix.size();
    let section: Vec<Vec<u64>> = (0..n)
        .map(|k| {
            first
                .get(&b_radix.coords(k))
                .cloned()
                .ok_or_else(|| TwistError::InternalConsistency("character without a lift".into()))
        })
        .collect::<Result<_>>()?;
    let mut gamma = Vec::with_capacity(n * n);
    let mut beta_bar = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let xy = b_radix.index(&b_radix.add(&b_radix.coords(x), &b_radix.coords(y)));
            let g = radix.add(&section[xy], &radix.neg(&radix.add(&section[x], &section[y])));
            if !b_set.contains(&g) {
                return Err(TwistError::InternalConsistency("Γ leaves B".into()));
            }
            gamma.push(g);
            beta_bar.push(form.exp(&section[x], &section[y]));
        }
    }
    Ok(SectionData { b_basis, b_radix, section, gamma, beta_bar })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(d: u64) -> PairingForm {
        PairingForm::new(Radix::new(vec![d, d]), vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn decomposition_of_z5_squared() {
        let f = standard(5);
        let dec = lagrangian_decomposition(&f).unwrap();
        assert_eq!(dec.b_radix.divisors(), &[5]);
        assert!(dec.verify(&f));
        assert!(f.is_lagrangian(&dec.b_members(f.radix())));
    }

    #[test]
    fn decomposition_of_z25_squared() {
        let f = standard(25);
        let dec = lagrangian_decomposition(&f).unwrap();
        assert_eq!(dec.b_members(f.radix()).len(), 25);
        assert!(dec.verify(&f));
    }

    #[test]
    fn trivial_group_decomposes_trivially() {
        let f = PairingForm::trivial(Radix::new(vec![]));
        let dec = lagrangian_decomposition(&f).unwrap();
        assert!(dec.b_basis.is_empty());
        assert!(dec.verify(&f));
    }

    #[test]
    fn five_a_is_lagrangian_and_does_not_split() {
        let f = standard(25);
        let r = f.radix().clone();
        let b = span(&r, &[vec![5, 0], vec![0, 5]]);
        assert_eq!(b.len(), 25);
        assert!(f.is_lagrangian(&b));
        let s = section_with_cocycle(&f, &b).unwrap();
        assert!(!s.gamma_is_trivial());
        assert!(!s.extension_splits(&r));
        assert!(s.cocycle_identity_holds(&r));
        assert!(s.section[0].iter().all(|&v| v == 0));
    }

    #[test]
    fn split_case_has_trivial_gamma() {
        let f = standard(5);
        let r = f.radix().clone();
        let b = span(&r, &[vec![1, 0]]);
        let s = section_with_cocycle(&f, &b).unwrap();
        assert!(s.gamma_is_trivial());
        assert!(s.beta_bar.iter().all(|&v| v == 0));
        assert!(s.extension_splits(&r));
    }

    #[test]
    fn non_lagrangian_is_rejected() {
        let f = standard(5);
        let b = vec![vec![0, 0]];
        assert!(section_with_cocycle(&f, &b).is_err());
    }
}
