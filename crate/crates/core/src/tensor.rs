//! k[G]⊗k[G] ≅ k[G×G] and the triple tensor power, stored sparsely.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use twistlab_cyclo::Cyclotomic;
use twistlab_groups::{FiniteGroup, Subgroup};

use crate::abelian::{AbelianStructure, Radix};
use crate::algebra::{add_into, AlgebraElement};
use crate::config::Limits;
use crate::fourier;
use crate::linalg;
use crate::{Result, TwistError};

/// Σ F[a,b] a⊗b with only nonzero coefficients stored.
#[derive(Clone)]
pub struct TensorElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<(u32, u32), Cyclotomic>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &TensorElement) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sparse triplet list `(i, j, cyc)` in lexicographic order.
impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, ((a, b), v)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a}, {b}, {v})")?;
        }
        write!(f, "]")
    }
}

impl TensorElement {
    pub fn zero(g: &Arc<FiniteGroup>) -> TensorElement {
        TensorElement { group: g.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(g: &Arc<FiniteGroup>) -> TensorElement {
        TensorElement::basis(g, g.identity(), g.identity())
    }

    pub fn basis(g: &Arc<FiniteGroup>, a: usize, b: usize) -> TensorElement {
        TensorElement::from_terms(g, [(a, b, Cyclotomic::one(1))])
    }

    pub fn from_terms(
        g: &Arc<FiniteGroup>,
        terms: impl IntoIterator<Item = (usize, usize, Cyclotomic)>,
    ) -> TensorElement {
        let mut coeffs = BTreeMap::new();
        for (a, b, v) in terms {
            assert!(a < g.order() && b < g.order(), "element index out of range");
            add_into(&mut coeffs, (a as u32, b as u32), v);
        }
        TensorElement { group: g.clone(), coeffs }
    }

    /// x⊗y.
    pub fn tensor(x: &AlgebraElement, y: &AlgebraElement) -> TensorElement {
        assert!(Arc::ptr_eq(x.group(), y.group()), "elements of different group algebras");
        let terms: Vec<(usize, usize, Cyclotomic)> =
            x.terms().flat_map(|(a, u)| y.terms().map(move |(b, v)| (a, b, u * v))).collect();
        TensorElement::from_terms(x.group(), terms)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, a: usize, b: usize) -> Cyclotomic {
        self.coeffs.get(&(a as u32, b as u32)).cloned().unwrap_or_else(|| Cyclotomic::zero(1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> {
        self.coeffs.iter().map(|(&(a, b), v)| (a as usize, b as usize, v))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Distinct first and second legs of the support.
    pub fn legs(&self) -> (Vec<usize>, Vec<usize>) {
        let first: BTreeSet<usize> = self.coeffs.keys().map(|&(a, _)| a as usize).collect();
        let second: BTreeSet<usize> = self.coeffs.keys().map(|&(_, b)| b as usize).collect();
        (first.into_iter().collect(), second.into_iter().collect())
    }

    fn same_group(&self, other: &TensorElement) {
        assert!(Arc::ptr_eq(&self.group, &other.group), "tensors over different groups");
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        self.same_group(other);
        let mut coeffs = self.coeffs.clone();
        for (&k, v) in &other.coeffs {
            add_into(&mut coeffs, k, v.clone());
        }
        TensorElement { group: self.group.clone(), coeffs }
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|(&k, v)| (k, -v)).collect() }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Cyclotomic) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero(&self.group);
        }
        TensorElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Product in k[G×G], computed in parallel over output rows.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        self.same_group(other);
        let g = &self.group;
        let mut lrows: BTreeMap<u32, Vec<(u32, &Cyclotomic)>> = BTreeMap::new();
        for (&(a, b), v) in &self.coeffs {
            lrows.entry(a).or_default().push((b, v));
        }
        let mut rrows: HashMap<u32, Vec<(u32, &Cyclotomic)>> = HashMap::new();
        for (&(c, d), w) in &other.coeffs {
            rrows.entry(c).or_default().push((d, w));
        }
        let lrows: Vec<(u32, Vec<(u32, &Cyclotomic)>)> = lrows.into_iter().collect();
        let out_rows: BTreeSet<u32> = lrows
            .iter()
            .flat_map(|(a, _)| rrows.keys().map(move |&c| g.mul(*a as usize, c as usize) as u32))
            .collect();
        let out_rows: Vec<u32> = out_rows.into_iter().collect();
        let inverses: Vec<usize> = lrows.iter().map(|(a, _)| g.inv(*a as usize)).collect();
        let rows: Vec<Vec<(u32, Cyclotomic)>> = out_rows
            .par_iter()
            .map(|&r| {
                let mut acc: HashMap<u32, Cyclotomic> = HashMap::new();
                for ((_, lrow), &ainv) in lrows.iter().zip(&inverses) {
                    let c = g.mul(ainv, r as usize) as u32;
                    let Some(rrow) = rrows.get(&c) else { continue };
                    for &(b, v) in lrow {
                        for &(d, w) in rrow {
                            let key = g.mul(b as usize, d as usize) as u32;
                            match acc.get_mut(&key) {
                                Some(s) => s.add_mul(v, w),
                                None => {
                                    acc.insert(key, v * w);
                                }
                            }
                        }
                    }
                }
                let mut row: Vec<(u32, Cyclotomic)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                row.sort_unstable_by_key(|(k, _)| *k);
                row
            })
            .collect();
        let mut coeffs = BTreeMap::new();
        for (r, row) in out_rows.iter().zip(rows) {
            for (k, v) in row {
                coeffs.insert((*r, k), v);
            }
        }
        TensorElement { group: g.clone(), coeffs }
    }

    /// a⊗b ↦ b⊗a.
    pub fn flip(&self) -> TensorElement {
        let coeffs = self.coeffs.iter().map(|(&(a, b), v)| ((b, a), v.clone())).collect();
        TensorElement { group: self.group.clone(), coeffs }
    }

    /// Apply a group automorphism to both legs.
    pub fn map_elements(&self, f: impl Fn(usize) -> usize) -> TensorElement {
        TensorElement::from_terms(&self.group, self.terms().map(|(a, b, v)| (f(a), f(b), v.clone())))
    }

    /// (g⊗g) F (g⊗g)⁻¹.
    pub fn conjugate_by(&self, g: usize) -> TensorElement {
        let grp = self.group.clone();
        self.map_elements(|x| grp.conj(g, x))
    }

    /// (ε⊗id)(F) = Σ F[a,b] b.
    pub fn counit_left(&self) -> AlgebraElement {
        AlgebraElement::from_terms(&self.group, self.terms().map(|(_, b, v)| (b, v.clone())))
    }

    /// (id⊗ε)(F) = Σ F[a,b] a.
    pub fn counit_right(&self) -> AlgebraElement {
        AlgebraElement::from_terms(&self.group, self.terms().map(|(a, _, v)| (a, v.clone())))
    }

    /// (Δ⊗id)(F).
    pub fn apply_delta_left(&self) -> TripleTensor {
        TripleTensor::from_terms(&self.group, self.terms().map(|(a, b, v)| (a, a, b, v.clone())))
    }

    /// (id⊗Δ)(F).
    pub fn apply_delta_right(&self) -> TripleTensor {
        TripleTensor::from_terms(&self.group, self.terms().map(|(a, b, v)| (a, b, b, v.clone())))
    }

    /// F⊗1.
    pub fn tensor_one_right(&self) -> TripleTensor {
        let e = self.group.identity();
        TripleTensor::from_terms(&self.group, self.terms().map(|(a, b, v)| (a, b, e, v.clone())))
    }

    /// 1⊗F.
    pub fn tensor_one_left(&self) -> TripleTensor {
        let e = self.group.identity();
        TripleTensor::from_terms(&self.group, self.terms().map(|(a, b, v)| (e, a, b, v.clone())))
    }

    pub fn inverse(&self) -> Result<TensorElement> {
        self.inverse_with(&Limits::default())
    }

    /// Fourier inversion when both legs generate abelian subgroups,
    /// otherwise a dense solve on the support subgroup of G×G.
    pub fn inverse_with(&self, limits: &Limits) -> Result<TensorElement> {
        let g = &self.group;
        if self.is_zero() {
            return Err(TwistError::NotAUnit);
        }
        let (first, second) = self.legs();
        let s1 = Subgroup::generated(g, &first);
        let s2 = Subgroup::generated(g, &second);
        if s1.is_abelian() && s2.is_abelian() {
            let a1 = AbelianStructure::from_subgroup(&s1)?;
            let a2 = AbelianStructure::from_subgroup(&s2)?;
            let radix = Radix::new([a1.divisors(), a2.divisors()].concat());
            let n2 = a2.order();
            let mut vals = vec![Cyclotomic::zero(1); a1.order() * n2];
            for (a, b, v) in self.terms() {
                let i = a1.position(a).expect("first leg") * n2 + a2.position(b).expect("second leg");
                vals[i] = v.clone();
            }
            let hat = fourier::forward(&radix, &vals);
            let inv: Vec<Cyclotomic> =
                hat.iter().map(|v| v.inv().map_err(|_| TwistError::NotAUnit)).collect::<Result<_>>()?;
            let back = fourier::inverse(&radix, &inv);
            let terms = back.into_iter().enumerate().map(|(i, v)| (a1.elements()[i / n2], a2.elements()[i % n2], v));
            return Ok(TensorElement::from_terms(g, terms));
        }
        let (m1, m2) = (s1.members(), s2.members());
        let n = m1.len() * m2.len();
        if n > limits.inversion_cap {
            return Err(TwistError::CapExceeded { what: "dense tensor inversion", size: n, cap: limits.inversion_cap });
        }
        let pos = |x: usize, y: usize| {
            m1.binary_search(&x).expect("closed support") * m2.len() + m2.binary_search(&y).expect("closed support")
        };
        let conductor = self.coeffs.values().map(|v| v.conductor()).max().unwrap_or(1);
        let mut m = vec![vec![Cyclotomic::zero(conductor); n]; n];
        for &x in m1 {
            for &y in m2 {
                let col = pos(x, y);
                for (a, b, v) in self.terms() {
                    m[pos(g.mul(a, x), g.mul(b, y))][col] = v.clone();
                }
            }
        }
        let mut rhs = vec![Cyclotomic::zero(conductor); n];
        rhs[pos(g.identity(), g.identity())] = Cyclotomic::one(conductor);
        let sol = linalg::solve(m, rhs).ok_or(TwistError::NotAUnit)?;
        let terms: Vec<(usize, usize, Cyclotomic)> = m1
            .iter()
            .flat_map(|&x| m2.iter().map(move |&y| (x, y)))
            .zip(sol)
            .map(|((x, y), v)| (x, y, v))
            .collect();
        Ok(TensorElement::from_terms(g, terms))
    }
}

/// Σ T[a,b,c] a⊗b⊗c.
#[derive(Clone)]
pub struct TripleTensor {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<(u32, u32, u32), Cyclotomic>,
}

impl PartialEq for TripleTensor {
    fn eq(&self, other: &TripleTensor) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for TripleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleTensor(nnz={})", self.coeffs.len())
    }
}

impl TripleTensor {
    pub fn from_terms(
        g: &Arc<FiniteGroup>,
        terms: impl IntoIterator<Item = (usize, usize, usize, Cyclotomic)>,
    ) -> TripleTensor {
        let mut coeffs = BTreeMap::new();
        for (a, b, c, v) in terms {
            add_into(&mut coeffs, (a as u32, b as u32, c as u32), v);
        }
        TripleTensor { group: g.clone(), coeffs }
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize) -> Cyclotomic {
        self.coeffs.get(&(a as u32, b as u32, c as u32)).cloned().unwrap_or_else(|| Cyclotomic::zero(1))
    }

    /// Product in k[G×G×G]; `work_cap` bounds nnz(self)·nnz(other).
    pub fn mul(&self, other: &TripleTensor, work_cap: usize) -> Result<TripleTensor> {
        let work = self.coeffs.len().saturating_mul(other.coeffs.len());
        if work > work_cap {
            return Err(TwistError::CapExceeded { what: "triple tensor product", size: work, cap: work_cap });
        }
        let g = &self.group;
        let mut acc: HashMap<(u32, u32, u32), Cyclotomic> = HashMap::new();
        for (&(a, b, c), v) in &self.coeffs {
            for (&(x, y, z), w) in &other.coeffs {
                let key = (
                    g.mul(a as usize, x as usize) as u32,
                    g.mul(b as usize, y as usize) as u32,
                    g.mul(c as usize, z as usize) as u32,
                );
                match acc.get_mut(&key) {
                    Some(s) => s.add_mul(v, w),
                    None => {
                        acc.insert(key, v * w);
                    }
                }
            }
        }
        let coeffs = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(TripleTensor { group: g.clone(), coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_i64(1, v)
    }

    fn s3() -> Arc<FiniteGroup> {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let mut t = Vec::new();
        for a in &perms {
            for b in &perms {
                t.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        Arc::new(FiniteGroup::from_table("S3", 6, t).unwrap())
    }

    fn naive_mul(x: &TensorElement, y: &TensorElement) -> TensorElement {
        let g = x.group();
        let mut terms = Vec::new();
        for (a, b, v) in x.terms() {
            for (p, q, w) in y.terms() {
                terms.push((g.mul(a, p), g.mul(b, q), v * w));
            }
        }
        TensorElement::from_terms(g, terms)
    }

    #[test]
    fn product_matches_naive() {
        let g = s3();
        let x = TensorElement::from_terms(&g, [(1, 2, c(3)), (3, 0, c(-1)), (1, 5, c(2))]);
        let y = TensorElement::from_terms(&g, [(4, 2, c(1)), (2, 2, c(5)), (0, 1, c(7))]);
        assert_eq!(x.mul(&y), naive_mul(&x, &y));
        assert_eq!(x.flip().flip(), x);
    }

    #[test]
    fn dense_inverse_on_s3() {
        let g = s3();
        let x = TensorElement::from_terms(&g, [(0, 0, c(2)), (1, 3, c(1))]);
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y), TensorElement::one(&g));
        assert_eq!(y.inverse().unwrap(), x);
    }

    #[test]
    fn non_unit_is_reported() {
        let g = s3();
        let x = TensorElement::from_terms(&g, [(0, 0, c(1)), (1, 0, c(1))]);
        assert_eq!(x.inverse(), Err(TwistError::NotAUnit));
    }
}
