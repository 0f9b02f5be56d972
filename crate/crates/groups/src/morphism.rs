use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::FiniteGroup;

/// A map of element indices, `images[g] = f(g)`.
#[derive(Clone)]
pub struct GroupMorphism {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub images: Vec<u32>,
}

impl std::fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupMorphism").field("images", &self.images).finish()
    }
}

impl PartialEq for GroupMorphism {
    fn eq(&self, other: &GroupMorphism) -> bool {
        self.images == other.images
    }
}

impl GroupMorphism {
    pub fn identity(g: &Arc<FiniteGroup>) -> GroupMorphism {
        GroupMorphism { source: g.clone(), target: g.clone(), images: (0..g.order() as u32).collect() }
    }

    /// x ↦ g·x·g⁻¹
    pub fn inner(g: &Arc<FiniteGroup>, by: usize) -> GroupMorphism {
        let images = (0..g.order()).map(|x| g.conj(by, x) as u32).collect();
        GroupMorphism { source: g.clone(), target: g.clone(), images }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// Multiplicativity on all pairs up to 512 elements, else on `samples`
    /// seeded random pairs.
    pub fn is_homomorphism(&self, samples: usize, seed: u64) -> bool {
        let (s, t) = (&self.source, &self.target);
        let ok = |a: usize, b: usize| self.apply(s.mul(a, b)) == t.mul(self.apply(a), self.apply(b));
        if s.order() <= 512 {
            (0..s.order()).all(|a| (0..s.order()).all(|b| ok(a, b)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).all(|_| ok(rng.gen_range(0..s.order()), rng.gen_range(0..s.order())))
        }
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    /// self ∘ other
    pub fn compose(&self, other: &GroupMorphism) -> GroupMorphism {
        let images = other.images.iter().map(|&x| self.images[x as usize]).collect();
        GroupMorphism { source: other.source.clone(), target: self.target.clone(), images }
    }

    pub fn inverse(&self) -> Option<GroupMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Some(GroupMorphism { source: self.target.clone(), target: self.source.clone(), images })
    }
}
