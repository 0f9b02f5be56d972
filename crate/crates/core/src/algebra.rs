//! Elements of the group algebra k[G], stored sparsely.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use twistlab_cyclo::Cyclotomic;
use twistlab_groups::{FiniteGroup, Subgroup};

use crate::abelian::AbelianStructure;
use crate::config::Limits;
use crate::fourier;
use crate::linalg;
use crate::tensor::TensorElement;
use crate::{Result, TwistError};

/// Σ c_g g with only nonzero coefficients stored.
#[derive(Clone)]
pub struct AlgebraElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<u32, Cyclotomic>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &AlgebraElement) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Cyclotomic>, key: K, v: Cyclotomic) {
    use std::collections::btree_map::Entry;
    if v.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &v;
            if s.is_zero() {
                e.remove();
            } else {
                e.insert(s);
            }
        }
    }
}

impl AlgebraElement {
    pub fn zero(g: &Arc<FiniteGroup>) -> AlgebraElement {
        AlgebraElement { group: g.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(g: &Arc<FiniteGroup>) -> AlgebraElement {
        AlgebraElement::basis(g, g.identity())
    }

    /// The group element x as an algebra element.
    pub fn basis(g: &Arc<FiniteGroup>, x: usize) -> AlgebraElement {
        AlgebraElement::from_terms(g, [(x, Cyclotomic::one(1))])
    }

    pub fn from_terms(g: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, Cyclotomic)>) -> AlgebraElement {
        let mut coeffs = BTreeMap::new();
        for (x, c) in terms {
            assert!(x < g.order(), "element index out of range");
            add_into(&mut coeffs, x as u32, c);
        }
        AlgebraElement { group: g.clone(), coeffs }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, x: usize) -> Cyclotomic {
        self.coeffs.get(&(x as u32)).cloned().unwrap_or_else(|| Cyclotomic::zero(1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.coeffs.iter().map(|(&k, v)| (k as usize, v))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().map(|&k| k as usize).collect()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_group(&self, other: &AlgebraElement) {
        assert!(Arc::ptr_eq(&self.group, &other.group), "elements of different group algebras");
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        self.same_group(other);
        let mut coeffs = self.coeffs.clone();
        for (&k, v) in &other.coeffs {
            add_into(&mut coeffs, k, v.clone());
        }
        AlgebraElement { group: self.group.clone(), coeffs }
    }

    pub fn neg(&self) -> AlgebraElement {
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, -v)).collect();
        AlgebraElement { group: self.group.clone(), coeffs }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Cyclotomic) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(&self.group);
        }
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect();
        AlgebraElement { group: self.group.clone(), coeffs }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        self.same_group(other);
        let g = &self.group;
        let mut coeffs = BTreeMap::new();
        for (&a, u) in &self.coeffs {
            for (&b, v) in &other.coeffs {
                add_into(&mut coeffs, g.mul(a as usize, b as usize) as u32, u * v);
            }
        }
        AlgebraElement { group: g.clone(), coeffs }
    }

    pub fn pow(&self, k: u32) -> AlgebraElement {
        (0..k).fold(AlgebraElement::one(&self.group), |acc, _| acc.mul(self))
    }

    /// ε(a) = Σ c_g.
    pub fn counit(&self) -> Cyclotomic {
        self.coeffs.values().fold(Cyclotomic::zero(1), |acc, v| &acc + v)
    }

    /// S(g) = g⁻¹.
    pub fn antipode(&self) -> AlgebraElement {
        let g = &self.group;
        AlgebraElement::from_terms(g, self.terms().map(|(x, v)| (g.inv(x), v.clone())))
    }

    /// Δ(g) = g⊗g.
    pub fn delta(&self) -> TensorElement {
        TensorElement::from_terms(&self.group, self.terms().map(|(x, v)| (x, x, v.clone())))
    }

    /// Image under a group automorphism given by its element map.
    pub fn map_elements(&self, f: impl Fn(usize) -> usize) -> AlgebraElement {
        AlgebraElement::from_terms(&self.group, self.terms().map(|(x, v)| (f(x), v.clone())))
    }

    /// g a g⁻¹.
    pub fn conjugate_by(&self, g: usize) -> AlgebraElement {
        let grp = self.group.clone();
        self.map_elements(|x| grp.conj(g, x))
    }

    pub fn inverse(&self) -> Result<AlgebraElement> {
        self.inverse_with(&Limits::default())
    }

    /// Fourier inversion on an abelian support subgroup, otherwise a dense solve.
    pub fn inverse_with(&self, limits: &Limits) -> Result<AlgebraElement> {
        let g = &self.group;
        if self.is_zero() {
            return Err(TwistError::NotAUnit);
        }
        let sub = Subgroup::generated(g, &self.support());
        if sub.is_abelian() {
            let a = AbelianStructure::from_subgroup(&sub)?;
            let vals: Vec<Cyclotomic> = a.elements().iter().map(|&x| self.coeff(x)).collect();
            let hat = fourier::forward(a.radix(), &vals);
            let inv: Vec<Cyclotomic> =
                hat.iter().map(|v| v.inv().map_err(|_| TwistError::NotAUnit)).collect::<Result<_>>()?;
            let back = fourier::inverse(a.radix(), &inv);
            return Ok(AlgebraElement::from_terms(g, a.elements().iter().copied().zip(back)));
        }
        let members = sub.members();
        let n = members.len();
        if n > limits.inversion_cap {
            return Err(TwistError::CapExceeded { what: "dense inversion", size: n, cap: limits.inversion_cap });
        }
        let pos = |x: usize| members.binary_search(&x).expect("closed support");
        let conductor = self.coeffs.values().map(|v| v.conductor()).max().unwrap_or(1);
        // column y of the left-multiplication matrix is self·y
        let mut m = vec![vec![Cyclotomic::zero(conductor); n]; n];
        for (col, &y) in members.iter().enumerate() {
            for (x, v) in self.terms() {
                m[pos(g.mul(x, y))][col] = v.clone();
            }
        }
        let mut rhs = vec![Cyclotomic::zero(conductor); n];
        rhs[pos(g.identity())] = Cyclotomic::one(conductor);
        let sol = linalg::solve(m, rhs).ok_or(TwistError::NotAUnit)?;
        Ok(AlgebraElement::from_terms(g, members.iter().copied().zip(sol)))
    }
}

/// p_χ = |A|⁻¹ Σ_{x∈A} χ(x)⁻¹ x.
pub fn idempotent_of_character(a: &AbelianStructure, k: &[u64]) -> AlgebraElement {
    let chi = a.character(k);
    let n = a.order() as i64;
    let e = a.exponent() as u32;
    let terms = a.radix().iter().zip(a.elements()).map(|(c, &x)| {
        let ex = chi.exp_at(&c) as i64;
        (x, Cyclotomic::root(e, -ex).scale(1, n))
    });
    AlgebraElement::from_terms(a.group(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5sq() -> (Arc<FiniteGroup>, AbelianStructure) {
        let g = Arc::new(FiniteGroup::abelian(&[5, 5], 512));
        let a = AbelianStructure::from_subgroup(&Subgroup::whole(&g)).unwrap();
        (g, a)
    }

    #[test]
    fn idempotents_are_orthogonal_and_sum_to_one() {
        let (g, a) = z5sq();
        let ps: Vec<AlgebraElement> = a.radix().iter().map(|k| idempotent_of_character(&a, &k)).collect();
        let total = ps.iter().fold(AlgebraElement::zero(&g), |acc, p| acc.add(p));
        assert_eq!(total, AlgebraElement::one(&g));
        for (i, p) in ps.iter().enumerate().step_by(7) {
            for (j, q) in ps.iter().enumerate().step_by(3) {
                let expected = if i == j { p.clone() } else { AlgebraElement::zero(&g) };
                assert_eq!(p.mul(q), expected);
            }
        }
    }

    #[test]
    fn counit_of_idempotent() {
        let (_, a) = z5sq();
        assert!(idempotent_of_character(&a, &[0, 0]).counit().is_one());
        assert!(idempotent_of_character(&a, &[1, 3]).counit().is_zero());
    }

    #[test]
    fn idempotent_eigenvalue() {
        let (g, a) = z5sq();
        let k = [2, 1];
        let p = idempotent_of_character(&a, &k);
        for &y in a.elements() {
            let lhs = AlgebraElement::basis(&g, y).mul(&p);
            assert_eq!(lhs, p.scale(&a.char_value(&k, y).unwrap()));
        }
    }

    #[test]
    fn inverse_of_group_element_and_idempotent() {
        let (g, a) = z5sq();
        let x = a.elements()[7];
        assert_eq!(AlgebraElement::basis(&g, x).inverse().unwrap(), AlgebraElement::basis(&g, g.inv(x)));
        assert_eq!(idempotent_of_character(&a, &[1, 0]).inverse(), Err(TwistError::NotAUnit));
    }

    #[test]
    fn inverse_of_spectral_sum() {
        let (g, a) = z5sq();
        let lam = |i: usize| Cyclotomic::from_ratio(5, i as i64 + 1, 2);
        let ps: Vec<AlgebraElement> = a.radix().iter().map(|k| idempotent_of_character(&a, &k)).collect();
        let x = ps.iter().enumerate().fold(AlgebraElement::zero(&g), |acc, (i, p)| acc.add(&p.scale(&lam(i))));
        let expected = ps
            .iter()
            .enumerate()
            .fold(AlgebraElement::zero(&g), |acc, (i, p)| acc.add(&p.scale(&lam(i).inv().unwrap())));
        assert_eq!(x.inverse().unwrap(), expected);
    }

    #[test]
    fn dense_inverse_on_nonabelian_support() {
        let g = Arc::new(
            FiniteGroup::from_table("S3", 6, {
                // permutations of 3 points in lexicographic order
                let perms: Vec<[usize; 3]> =
                    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
                let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
                let mut t = Vec::new();
                for a in &perms {
                    for b in &perms {
                        t.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
                    }
                }
                t
            })
            .unwrap(),
        );
        let x = AlgebraElement::from_terms(
            &g,
            [(0, Cyclotomic::from_i64(1, 3)), (1, Cyclotomic::from_i64(1, 1)), (3, Cyclotomic::from_i64(1, 1))],
        );
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y), AlgebraElement::one(&g));
        assert_eq!(y.mul(&x), AlgebraElement::one(&g));
    }
}
