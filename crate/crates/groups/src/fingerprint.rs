use std::collections::BTreeMap;

use crate::abelian::decompose_abelian;
use crate::classes::{center, conjugacy_classes};
use crate::group::FiniteGroup;

/// Isomorphism invariants. Different fingerprints prove non-isomorphism;
/// equal ones prove nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    /// element order → number of elements of that order
    pub element_orders: BTreeMap<u32, usize>,
    /// class size → number of classes of that size
    pub class_sizes: BTreeMap<usize, usize>,
    /// (element order, class size) → number of classes of that type
    pub class_types: BTreeMap<(u32, usize), usize>,
    pub center_order: usize,
    /// Cyclic factors of G/[G,G], largest first.
    pub abelianization: Vec<u64>,
}

fn normal_closure(g: &FiniteGroup, seeds: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    mask[g.identity()] = true;
    let mut members = vec![g.identity()];
    let mut queue: Vec<usize> = seeds.to_vec();
    while let Some(x) = queue.pop() {
        if mask[x] {
            continue;
        }
        // close the new element under products with everything found so far
        mask[x] = true;
        members.push(x);
        let mut i = members.len() - 1;
        while i < members.len() {
            let y = members[i];
            for &s in g.generators() {
                let c = g.conj(s, y);
                if !mask[c] {
                    queue.push(c);
                }
            }
            for j in 0..members.len() {
                let z = g.mul(y, members[j]);
                if !mask[z] {
                    mask[z] = true;
                    members.push(z);
                }
            }
            i += 1;
        }
    }
    mask
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    let mut element_orders = BTreeMap::new();
    for &o in g.element_orders() {
        *element_orders.entry(o).or_insert(0) += 1;
    }
    let mut class_sizes = BTreeMap::new();
    let mut class_types = BTreeMap::new();
    for c in conjugacy_classes(g) {
        *class_sizes.entry(c.len()).or_insert(0) += 1;
        *class_types.entry((g.element_order(c[0]), c.len())).or_insert(0) += 1;
    }
    let gens = g.generators();
    let comms: Vec<usize> =
        gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    let derived = normal_closure(g, &comms);
    // coset numbering of G/[G,G]
    let n = g.order();
    let d_members: Vec<usize> = (0..n).filter(|&x| derived[x]).collect();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &d in &d_members {
            coset[g.mul(x, d)] = id;
        }
    }
    let quotient: Vec<usize> = (0..reps.len()).collect();
    let qmul = |a: usize, b: usize| coset[g.mul(reps[a], reps[b])];
    let dec = decompose_abelian(&quotient, coset[g.identity()], &qmul);
    GroupFingerprint {
        order: n,
        element_orders,
        class_sizes,
        class_types,
        center_order: center(g).len(),
        abelianization: dec.divisors,
    }
}

pub fn fingerprints_differ(a: &GroupFingerprint, b: &GroupFingerprint) -> bool {
    a != b
}
