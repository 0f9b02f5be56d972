//! Finite abelian groups in coordinates, and their characters.

use std::collections::HashMap;
use std::sync::Arc;

use twistlab_cyclo::{lcm, Cyclotomic};
use twistlab_groups::{decompose_abelian, FiniteGroup, Subgroup};

use crate::{Result, TwistError};

/// Mixed-radix coordinates on Z/d₁ × … × Z/d_r, last coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Radix {
    divisors: Vec<u64>,
}

impl Radix {
    pub fn new(divisors: Vec<u64>) -> Radix {
        assert!(divisors.iter().all(|&d| d >= 1), "divisors must be positive");
        Radix { divisors }
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn size(&self) -> usize {
        self.divisors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.divisors.iter().fold(1, |a, &d| lcm(a, d))
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.divisors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + (c % d) as usize)
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.divisors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.divisors).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.size()).map(|i| self.coords(i))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.divisors).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.divisors).map(|(&x, &d)| (d - x % d) % d).collect()
    }

    pub fn scale(&self, a: &[u64], k: i64) -> Vec<u64> {
        a.iter()
            .zip(&self.divisors)
            .map(|(&x, &d)| (x as i128 * k as i128).rem_euclid(d as i128) as u64)
            .collect()
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        if self.divisors[i] > 1 {
            v[i] = 1;
        }
        v
    }

    /// Exponent of ⟨χ_k, a⟩ = ζ_e^{Σ kᵢ aᵢ e/dᵢ} in Z/e.
    pub fn pairing_exp(&self, k: &[u64], a: &[u64]) -> u64 {
        let e = self.exponent();
        let mut s: u128 = 0;
        for ((&ki, &ai), &d) in k.iter().zip(a).zip(&self.divisors) {
            s += (ki % d) as u128 * (ai % d) as u128 * (e / d) as u128;
        }
        (s % e as u128) as u64
    }

    /// Order of the element with these coordinates.
    pub fn order_of(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.divisors)
            .map(|(&x, &d)| d / twistlab_cyclo::gcd(x % d, d))
            .fold(1, lcm)
    }
}

/// A character χ_k(a) = ζ_e^{Σ kᵢ aᵢ e/dᵢ} of a group in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub radix: Radix,
    pub k: Vec<u64>,
}

impl Character {
    pub fn exp_at(&self, a: &[u64]) -> u64 {
        self.radix.pairing_exp(&self.k, a)
    }

    pub fn eval(&self, a: &[u64]) -> Cyclotomic {
        Cyclotomic::root(self.radix.exponent() as u32, self.exp_at(a) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.k.iter().zip(self.radix.divisors()).all(|(&k, &d)| k % d == 0)
    }
}

/// An abelian subgroup of a finite group with a chosen cyclic decomposition.
#[derive(Clone)]
pub struct AbelianStructure {
    subgroup: Subgroup,
    generators: Vec<usize>,
    radix: Radix,
    elements: Vec<usize>,
    index: HashMap<usize, usize>,
}

impl std::fmt::Debug for AbelianStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AbelianStructure")
            .field("generators", &self.generators)
            .field("divisors", &self.radix.divisors)
            .finish()
    }
}

impl PartialEq for AbelianStructure {
    fn eq(&self, other: &AbelianStructure) -> bool {
        self.subgroup == other.subgroup && self.generators == other.generators
    }
}

impl AbelianStructure {
    /// Decompose automatically (largest orders first).
    pub fn from_subgroup(subgroup: &Subgroup) -> Result<AbelianStructure> {
        if !subgroup.is_abelian() {
            return Err(TwistError::NotAbelian);
        }
        let g = subgroup.parent().clone();
        let dec = decompose_abelian(subgroup.members(), g.identity(), &|a, b| g.mul(a, b));
        AbelianStructure::with_generators(subgroup, &dec.generators)
    }

    /// Use the given generators, which must form a basis of the subgroup.
    pub fn with_generators(subgroup: &Subgroup, gens: &[usize]) -> Result<AbelianStructure> {
        if !subgroup.is_abelian() {
            return Err(TwistError::NotAbelian);
        }
        let g = subgroup.parent();
        if gens.iter().any(|&x| !subgroup.contains(x)) {
            return Err(TwistError::Hypothesis("generator outside the subgroup".into()));
        }
        let divisors: Vec<u64> = gens.iter().map(|&x| g.element_order(x) as u64).collect();
        let radix = Radix::new(divisors);
        if radix.size() != subgroup.order() {
            return Err(TwistError::Hypothesis("generators do not form a basis".into()));
        }
        let mut elements = Vec::with_capacity(radix.size());
        let mut index = HashMap::with_capacity(radix.size());
        for (i, c) in radix.iter().enumerate() {
            let x = c
                .iter()
                .zip(gens)
                .fold(g.identity(), |acc, (&k, &gen)| g.mul(acc, g.pow(gen, k as i64)));
            if index.insert(x, i).is_some() {
                return Err(TwistError::Hypothesis("generators do not form a basis".into()));
            }
            elements.push(x);
        }
        Ok(AbelianStructure {
            subgroup: subgroup.clone(),
            generators: gens.to_vec(),
            radix,
            elements,
            index,
        })
    }

    pub fn trivial(g: &Arc<FiniteGroup>) -> AbelianStructure {
        AbelianStructure::with_generators(&Subgroup::trivial(g), &[]).expect("trivial group")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.subgroup.parent()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn radix(&self) -> &Radix {
        &self.radix
    }

    pub fn divisors(&self) -> &[u64] {
        self.radix.divisors()
    }

    pub fn exponent(&self) -> u64 {
        self.radix.exponent()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in radix order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.index.contains_key(&x)
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.index.get(&x).copied()
    }

    pub fn coords(&self, x: usize) -> Option<Vec<u64>> {
        self.position(x).map(|i| self.radix.coords(i))
    }

    pub fn element_at(&self, coords: &[u64]) -> usize {
        self.elements[self.radix.index(coords)]
    }

    pub fn character(&self, k: &[u64]) -> Character {
        Character { radix: self.radix.clone(), k: k.to_vec() }
    }

    /// χ(x) for a group element x of the subgroup.
    pub fn char_value(&self, k: &[u64], x: usize) -> Option<Cyclotomic> {
        self.coords(x).map(|a| self.character(k).eval(&a))
    }

    /// Images of the generators under x ↦ g x g⁻¹, in coordinates.
    pub fn conjugation_action(&self, g: usize) -> Result<Vec<Vec<u64>>> {
        let grp = self.group();
        self.generators
            .iter()
            .map(|&x| self.coords(grp.conj(g, x)).ok_or(TwistError::NotNormal))
            .collect()
    }

    /// The dual action (g·χ)(a) = χ(g⁻¹ a g) on character exponent vectors.
    pub fn dual_action(&self, g: usize) -> Result<Vec<Vec<u64>>> {
        let grp = self.group();
        let ginv = grp.inv(g);
        let pre = self.conjugation_action(ginv)?;
        Ok(dual_of_action(&self.radix, &pre))
    }
}

/// Given images of the basis under an endomorphism φ (as coordinate vectors),
/// return images of the dual basis under χ ↦ χ∘φ.
pub fn dual_of_action(radix: &Radix, images: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = radix.rank();
    let d = radix.divisors();
    let e = radix.exponent();
    (0..r)
        .map(|i| {
            // (χ_{eᵢ}∘φ)(e_j) = ζ_e^{φ(e_j)ᵢ e/dᵢ}; coordinate j of the result is that exponent / (e/d_j)
            (0..r)
                .map(|j| {
                    let ex = images[j][i] % d[i] * (e / d[i]) % e;
                    (ex / (e / d[j])) % d[j]
                })
                .collect()
        })
        .collect()
}

/// Apply an endomorphism given by images of the basis to a coordinate vector.
pub fn apply_action(radix: &Radix, images: &[Vec<u64>], a: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; radix.rank()];
    for (j, &aj) in a.iter().enumerate() {
        let img = radix.scale(&images[j], aj as i64);
        out = radix.add(&out, &img);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radix_round_trip() {
        let r = Radix::new(vec![4, 2, 3]);
        for i in 0..r.size() {
            assert_eq!(r.index(&r.coords(i)), i);
        }
        assert_eq!(r.exponent(), 12);
        assert_eq!(r.order_of(&[2, 1, 0]), 2);
    }

    #[test]
    fn characters_are_homomorphisms() {
        let r = Radix::new(vec![6, 2]);
        for k in r.iter() {
            let chi = Character { radix: r.clone(), k };
            for a in r.iter() {
                for b in r.iter() {
                    let lhs = chi.exp_at(&r.add(&a, &b));
                    assert_eq!(lhs, (chi.exp_at(&a) + chi.exp_at(&b)) % 6);
                }
            }
        }
    }

    #[test]
    fn structure_of_klein_four() {
        let g = Arc::new(FiniteGroup::abelian(&[2, 2], 512));
        let s = Subgroup::whole(&g);
        let a = AbelianStructure::from_subgroup(&s).unwrap();
        assert_eq!(a.divisors(), &[2, 2]);
        for (i, &x) in a.elements().iter().enumerate() {
            assert_eq!(a.position(x), Some(i));
        }
    }
}
