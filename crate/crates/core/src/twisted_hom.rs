//! Twisted homomorphisms (f, F): k[S] → k[G] with Δ(f(s))F = F(f(s)⊗f(s)).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistlab_groups::FiniteGroup;

use crate::algebra::AlgebraElement;
use crate::config::Limits;
use crate::tensor::TensorElement;

/// Source elements mapped to units of k[target], together with the twist.
#[derive(Debug, Clone)]
pub struct TwistedHomomorphism {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    /// `images[s]` = f(s).
    pub images: Vec<AlgebraElement>,
    pub twist: TensorElement,
}

/// Which source elements (and pairs) a check visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedHomReport {
    pub elements_checked: usize,
    pub pairs_checked: usize,
    pub multiplicative: bool,
    /// f(s)·f(s⁻¹) = 1 on every checked element.
    pub images_invertible: bool,
    pub twist_invertible: bool,
    pub intertwining: bool,
    /// First source element where multiplicativity, invertibility or the intertwining failed.
    pub first_failure: Option<usize>,
}

impl TwistedHomReport {
    pub fn passed(&self) -> bool {
        self.multiplicative && self.images_invertible && self.twist_invertible && self.intertwining
    }
}

impl TwistedHomomorphism {
    /// Exhaustive up to 512 source elements, otherwise `samples` seeded elements and pairs.
    pub fn default_coverage(&self, samples: usize, seed: u64) -> Coverage {
        if self.source.order() <= 512 {
            Coverage::Exhaustive
        } else {
            Coverage::Sampled { count: samples, seed }
        }
    }
}

pub fn twisted_homomorphism_check(t: &TwistedHomomorphism, coverage: Coverage, limits: &Limits) -> TwistedHomReport {
    let s = &t.source;
    let n = s.order();
    let (elements, pairs): (Vec<usize>, Vec<(usize, usize)>) = match coverage {
        Coverage::Exhaustive => ((0..n).collect(), (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()),
        Coverage::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let el = (0..count).map(|_| rng.gen_range(0..n)).collect();
            let pr = (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            (el, pr)
        }
    };
    let mut first_failure = None;
    let mut note = |x: usize| {
        first_failure.get_or_insert(x);
    };
    let mut multiplicative = true;
    for &(a, b) in &pairs {
        if t.images[s.mul(a, b)] != t.images[a].mul(&t.images[b]) {
            multiplicative = false;
            note(a);
        }
    }
    let one = AlgebraElement::one(&t.target);
    let mut images_invertible = true;
    let mut intertwining = true;
    for &x in &elements {
        let fx = &t.images[x];
        if fx.mul(&t.images[s.inv(x)]) != one {
            images_invertible = false;
            note(x);
        }
        if fx.delta().mul(&t.twist) != t.twist.mul(&TensorElement::tensor(fx, fx)) {
            intertwining = false;
            note(x);
        }
    }
    TwistedHomReport {
        elements_checked: elements.len(),
        pairs_checked: pairs.len(),
        multiplicative,
        images_invertible,
        twist_invertible: t.twist.inverse_with(limits).is_ok(),
        intertwining,
        first_failure,
    }
}
