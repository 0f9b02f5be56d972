//! Class-preserving automorphisms: conjugators in k[G], their symmetric twists, and the H¹ criterion.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistlab_cyclo::Cyclotomic;
use twistlab_groups::GroupMorphism;

use crate::abelian::{apply_action, AbelianStructure};
use crate::algebra::AlgebraElement;
use crate::config::Limits;
use crate::hopf::{coboundary_of_unit, invariance_check};
use crate::tensor::TensorElement;
use crate::twist::from_dual_values;
use crate::{Result, TwistError};

/// Random combinations tried before giving up on an invertible conjugator.
const CONJUGATOR_ATTEMPTS: u32 = 64;

#[derive(Debug, Clone)]
pub struct Conjugator {
    /// x with φ(g)·x = x·g for all g.
    pub element: AlgebraElement,
    pub inverse: AlgebraElement,
    /// Dimension of the solution space (number of orbit sums).
    pub dimension: usize,
    /// Random combinations drawn until one was invertible.
    pub attempts: u32,
    /// Group elements on which φ(g)x = xg was checked after the solve.
    pub verified_on: usize,
}

/// Orbit sums spanning {x : φ(g)x = xg ∀g}, with x restricted to k[A] when `within` is given.
pub fn conjugator_space(phi: &GroupMorphism, within: Option<&AbelianStructure>) -> Result<Vec<AlgebraElement>> {
    let g = &phi.source;
    let domain: Vec<usize> = match within {
        Some(a) => a.elements().to_vec(),
        None => (0..g.order()).collect(),
    };
    let mut slot = vec![usize::MAX; g.order()];
    for (i, &h) in domain.iter().enumerate() {
        slot[h] = i;
    }
    // union-find over the maps h ↦ φ(s)·h·s⁻¹
    let mut parent: Vec<usize> = (0..domain.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &s in g.generators() {
        let (ps, sinv) = (phi.apply(s), g.inv(s));
        for (i, &h) in domain.iter().enumerate() {
            let img = g.mul(g.mul(ps, h), sinv);
            if slot[img] == usize::MAX {
                return Err(TwistError::Hypothesis(format!(
                    "φ({0})·{0}⁻¹ does not lie in the chosen abelian subgroup",
                    g.label(s)
                )));
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, slot[img]));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; domain.len()];
    for i in 0..domain.len() {
        let r = find(&mut parent, i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[index_of_root[r]].push(domain[i]);
    }
    Ok(orbits
        .into_iter()
        .map(|o| AlgebraElement::from_terms(g, o.into_iter().map(|h| (h, Cyclotomic::one(1)))))
        .collect())
}

/// An invertible x ∈ k[G] (or k[A]) with φ(g) = x g x⁻¹, from a seeded random combination of orbit sums.
pub fn find_conjugator(phi: &GroupMorphism, within: Option<&AbelianStructure>, limits: &Limits) -> Result<Conjugator> {
    let g = &phi.source;
    let basis = conjugator_space(phi, within)?;
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    for attempt in 1..=CONJUGATOR_ATTEMPTS {
        let x = basis.iter().fold(AlgebraElement::zero(g), |acc, b| {
            acc.add(&b.scale(&Cyclotomic::from_i64(1, rng.gen_range(1..=9))))
        });
        let inverse = match x.inverse_with(limits) {
            Ok(inv) => inv,
            Err(TwistError::NotAUnit) => continue,
            Err(err) => return Err(err),
        };
        let checks: Vec<usize> =
            if g.order() <= limits.enum_cap { (0..g.order()).collect() } else { g.generators().to_vec() };
        for &h in &checks {
            let lhs = AlgebraElement::basis(g, phi.apply(h)).mul(&x);
            if lhs != x.mul(&AlgebraElement::basis(g, h)) {
                return Err(TwistError::InternalConsistency(format!(
                    "orbit-sum solution fails φ(g)x = xg at {}",
                    g.label(h)
                )));
            }
        }
        return Ok(Conjugator { element: x, inverse, dimension: basis.len(), attempts: attempt, verified_on: checks.len() });
    }
    Err(TwistError::SolveFailed(format!(
        "no invertible conjugator among {CONJUGATOR_ATTEMPTS} combinations of {} orbit sums",
        basis.len()
    )))
}

/// (x⊗x)Δ(x)⁻¹ for the conjugator x, checked invariant and flip-fixed.
pub fn symmetric_twist_of(phi: &GroupMorphism, within: Option<&AbelianStructure>, limits: &Limits) -> Result<TensorElement> {
    let x = find_conjugator(phi, within, limits)?;
    let t = TensorElement::tensor(&x.element, &x.element).mul(&x.inverse.delta());
    if !invariance_check(&t) {
        return Err(TwistError::InternalConsistency("coboundary of a conjugator is not invariant".into()));
    }
    if t.flip() != t {
        return Err(TwistError::InternalConsistency("coboundary of a conjugator is not symmetric".into()));
    }
    Ok(t)
}

/// Precomputed conjugation data for 1-cocycles G → A.
struct Action<'a> {
    a: &'a AbelianStructure,
    /// conj[g][i] = position of g·aᵢ·g⁻¹.
    conj: Vec<Vec<usize>>,
    coords: Vec<Vec<u64>>,
}

impl<'a> Action<'a> {
    fn new(a: &'a AbelianStructure, limits: &Limits) -> Result<Action<'a>> {
        let g = a.group();
        let size = g.order().saturating_mul(a.order());
        if size > limits.h1_cap {
            return Err(TwistError::CapExceeded { what: "conjugation table G×A", size, cap: limits.h1_cap });
        }
        if !a.subgroup().is_normal() {
            return Err(TwistError::NotNormal);
        }
        let conj = (0..g.order())
            .map(|x| a.elements().iter().map(|&y| a.position(g.conj(x, y)).expect("A is normal")).collect())
            .collect();
        Ok(Action { a, conj, coords: a.radix().iter().collect() })
    }

    fn add(&self, i: usize, j: usize) -> usize {
        self.a.radix().index(&self.a.radix().add(&self.coords[i], &self.coords[j]))
    }

    fn neg(&self, i: usize) -> usize {
        self.a.radix().index(&self.a.radix().neg(&self.coords[i]))
    }

    /// Extend generator images to ψ: G → A by ψ(hs) = ψ(h) + h·ψ(s); None if inconsistent.
    fn extend(&self, images: &[usize]) -> Option<Vec<usize>> {
        let g = self.a.group();
        let gens = g.generators();
        let mut psi = vec![usize::MAX; g.order()];
        psi[g.identity()] = 0;
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(h) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let hs = g.mul(h, s);
                let v = self.add(psi[h], self.conj[h][images[k]]);
                if psi[hs] == usize::MAX {
                    psi[hs] = v;
                    queue.push_back(hs);
                } else if psi[hs] != v {
                    return None;
                }
            }
        }
        Some(psi)
    }

    fn coboundary_images(&self, a_pos: usize) -> Vec<usize> {
        let gens = self.a.group().generators();
        gens.iter().map(|&s| self.add(a_pos, self.neg(self.conj[s][a_pos]))).collect()
    }
}

/// Characters of A with their stabilizers in G, under (g·χ)(a) = χ(g⁻¹ag).
fn stabilizers(act: &Action) -> Vec<(Vec<u64>, Vec<usize>)> {
    let a = act.a;
    let g = a.group();
    a.radix()
        .iter()
        .map(|k| {
            let stab = (0..g.order())
                .filter(|&s| {
                    let sinv = g.inv(s);
                    (0..a.order()).all(|i| {
                        a.radix().pairing_exp(&k, &act.coords[act.conj[sinv][i]]) == a.radix().pairing_exp(&k, &act.coords[i])
                    })
                })
                .collect();
            (k, stab)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct H1Class {
    /// ψ on the generators of G, in coordinates of A; the lexicographically least representative.
    pub generator_images: Vec<Vec<u64>>,
    pub trivial: bool,
    /// x ∈ k[A] with [x,g] = ψ(g).
    pub x: AlgebraElement,
    /// Group elements on which [x,g] = ψ(g) was checked.
    pub verified_on: usize,
    pub coboundary_invariant: bool,
}

#[derive(Debug, Clone)]
pub struct H1Report {
    pub cocycles: usize,
    pub coboundaries: usize,
    /// |H¹(G,A)|.
    pub classes: usize,
    /// Classes meeting χ(ψ(s)) = 1 for every χ and every s in its stabilizer.
    pub admissible: Vec<H1Class>,
}

/// Enumerate H¹(G,A) by generator images, keep the classes satisfying the character condition,
/// and rebuild a conjugator x ∈ k[A] for each by transport along Â-orbits.
pub fn h1_detector(a: &AbelianStructure, limits: &Limits) -> Result<H1Report> {
    let g = a.group();
    let act = Action::new(a, limits)?;
    let k = g.generators().len();
    let candidates = (a.order() as u128).pow(k as u32);
    if candidates > limits.h1_cap as u128 {
        return Err(TwistError::CapExceeded { what: "1-cocycle candidates", size: candidates.min(usize::MAX as u128) as usize, cap: limits.h1_cap });
    }
    let n = a.order();
    let mut z1: Vec<Vec<usize>> = Vec::new();
    let mut images = vec![0usize; k];
    loop {
        if act.extend(&images).is_some() {
            z1.push(images.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
        }
        if images.iter().all(|&v| v == 0) {
            break;
        }
    }
    let b1: BTreeSet<Vec<usize>> = (0..n).map(|p| act.coboundary_images(p)).collect();
    let canonical = |psi: &[usize]| -> Vec<usize> {
        b1.iter()
            .map(|b| psi.iter().zip(b).map(|(&x, &y)| act.add(x, y)).collect::<Vec<usize>>())
            .min()
            .expect("B¹ contains 0")
    };
    let classes: BTreeSet<Vec<usize>> = z1.iter().map(|psi| canonical(psi)).collect();
    let stabs = stabilizers(&act);
    let mut admissible = Vec::new();
    for rep in &classes {
        let psi = act.extend(rep).expect("representative is a cocycle");
        let ok = stabs
            .iter()
            .all(|(chi, stab)| stab.iter().all(|&s| a.radix().pairing_exp(chi, &act.coords[psi[s]]) == 0));
        if ok {
            admissible.push(reconstruct(&act, rep, &psi, limits)?);
        }
    }
    Ok(H1Report { cocycles: z1.len(), coboundaries: b1.len(), classes: classes.len(), admissible })
}

/// x(gχ) = x(χ)·(gχ)(ψ(g)) along generator edges of each Â-orbit, starting from x = 1 on orbit representatives.
fn reconstruct(act: &Action, rep: &[usize], psi: &[usize], limits: &Limits) -> Result<H1Class> {
    let a = act.a;
    let g = a.group();
    let radix = a.radix();
    let e = a.exponent();
    let n = a.order();
    let dual: Vec<Vec<Vec<u64>>> = g.generators().iter().map(|&s| a.dual_action(s)).collect::<Result<_>>()?;
    let mut x = vec![u64::MAX; n];
    for start in 0..n {
        if x[start] != u64::MAX {
            continue;
        }
        x[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for (kk, images) in dual.iter().enumerate() {
                let gc = radix.index(&apply_action(radix, images, &radix.coords(c)));
                let v = (x[c] + radix.pairing_exp(&radix.coords(gc), &act.coords[rep[kk]])) % e;
                if x[gc] == u64::MAX {
                    x[gc] = v;
                    queue.push_back(gc);
                } else if x[gc] != v {
                    return Err(TwistError::InternalConsistency(
                        "orbit transport of x is inconsistent for an admissible cocycle".into(),
                    ));
                }
            }
        }
    }
    let values: Vec<Cyclotomic> = x.iter().map(|&k| Cyclotomic::root(e as u32, k as i64)).collect();
    let inv_values: Vec<Cyclotomic> = x.iter().map(|&k| Cyclotomic::root(e as u32, -(k as i64))).collect();
    let xe = from_dual_values(a, &values);
    let xinv = from_dual_values(a, &inv_values);
    let checks: Vec<usize> = if g.order() <= limits.enum_cap { (0..g.order()).collect() } else { g.generators().to_vec() };
    for &h in &checks {
        let hb = AlgebraElement::basis(g, h);
        let comm = xe.mul(&hb).mul(&xinv).mul(&AlgebraElement::basis(g, g.inv(h)));
        if comm != AlgebraElement::basis(g, a.elements()[psi[h]]) {
            return Err(TwistError::InternalConsistency(format!("[x,g] ≠ ψ(g) at g = {}", g.label(h))));
        }
    }
    let coboundary_invariant = invariance_check(&coboundary_of_unit(&xe, limits)?);
    Ok(H1Class {
        generator_images: rep.iter().map(|&p| act.coords[p].clone()).collect(),
        trivial: rep.iter().all(|&p| p == 0),
        x: xe,
        verified_on: checks.len(),
        coboundary_invariant,
    })
}

/// Independent count of H¹(G,A) and of its admissible classes: cocycle identity on all pairs,
/// classes compared as full function tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct H1Oracle {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub classes: usize,
    pub admissible_classes: usize,
}

pub fn h1_brute_force(a: &AbelianStructure, limits: &Limits) -> Result<H1Oracle> {
    let g = a.group();
    let order = g.order();
    let n = a.order();
    let gens = g.generators().to_vec();
    let k = gens.len();
    let work = (n as u128).pow(k as u32) * (order as u128) * (order as u128);
    if work > (limits.h1_cap as u128) * 64 {
        return Err(TwistError::CapExceeded { what: "brute-force H¹", size: work.min(usize::MAX as u128) as usize, cap: limits.h1_cap * 64 });
    }
    let radix = a.radix();
    let conj_coords = |h: usize, v: &[u64]| a.coords(g.conj(h, a.element_at(v))).expect("A is normal");
    // a shortest word for every element
    let mut word: Vec<Option<Vec<usize>>> = vec![None; order];
    word[g.identity()] = Some(Vec::new());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(h) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let hs = g.mul(h, s);
            if word[hs].is_none() {
                let mut w = word[h].clone().unwrap();
                w.push(i);
                word[hs] = Some(w);
                queue.push_back(hs);
            }
        }
    }
    let mut cocycles: Vec<Vec<Vec<u64>>> = Vec::new();
    for t in 0..n.pow(k as u32) {
        let imgs: Vec<Vec<u64>> = (0..k).map(|i| radix.coords(t / n.pow((k - 1 - i) as u32) % n)).collect();
        let table: Vec<Vec<u64>> = (0..order)
            .map(|h| {
                let mut cur = g.identity();
                let mut val = vec![0u64; radix.rank()];
                for &i in word[h].as_ref().unwrap() {
                    val = radix.add(&val, &conj_coords(cur, &imgs[i]));
                    cur = g.mul(cur, gens[i]);
                }
                val
            })
            .collect();
        let ok = (0..order).all(|x| {
            (0..order).all(|y| table[g.mul(x, y)] == radix.add(&table[x], &conj_coords(x, &table[y])))
        });
        if ok {
            cocycles.push(table);
        }
    }
    let coboundaries: Vec<Vec<Vec<u64>>> = radix
        .iter()
        .map(|c| (0..order).map(|h| radix.add(&c, &radix.neg(&conj_coords(h, &c)))).collect())
        .collect();
    let distinct_b: HashSet<&Vec<Vec<u64>>> = coboundaries.iter().collect();
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut classes = 0;
    let mut admissible_classes = 0;
    for z in &cocycles {
        if seen.contains(z) {
            continue;
        }
        classes += 1;
        for b in &coboundaries {
            seen.insert(z.iter().zip(b).map(|(u, v)| radix.add(u, v)).collect());
        }
        let admissible = radix.iter().all(|chi| {
            (0..order)
                .filter(|&s| {
                    a.elements().iter().all(|&y| {
                        let moved = a.coords(g.mul(g.mul(g.inv(s), y), s)).unwrap();
                        radix.pairing_exp(&chi, &moved) == radix.pairing_exp(&chi, &a.coords(y).unwrap())
                    })
                })
                .all(|s| radix.pairing_exp(&chi, &z[s]) == 0)
        });
        if admissible {
            admissible_classes += 1;
        }
    }
    Ok(H1Oracle { cocycles: cocycles.len(), coboundaries: distinct_b.len(), classes, admissible_classes })
}
