#![allow(dead_code)]

use std::sync::Arc;

use twistlab_core::{AbelianStructure, FormTwist, PairingForm};
use twistlab_groups::{FiniteGroup, Subgroup};

/// Heisenberg group over Z/p with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'), index p²a + pb + c.
pub fn heisenberg(p: usize) -> Arc<FiniteGroup> {
    let n = p * p * p;
    let split = |i: usize| (i / (p * p), (i / p) % p, i % p);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        let (a, b, c) = split(i);
        for j in 0..n {
            let (a2, b2, c2) = split(j);
            let k = ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
            table.push(k as u32);
        }
    }
    let g = FiniteGroup::from_table("heisenberg", n, table).unwrap();
    Arc::new(g.with_generators(vec![p * p, p]).unwrap())
}

pub const X: usize = 25;
pub const Y: usize = 5;
pub const C: usize = 1;

/// F over ⟨gen, c⟩ with the standard alternating form ζ^{it−js}.
pub fn standard_twist(g: &Arc<FiniteGroup>, gen: usize) -> FormTwist {
    let sub = Subgroup::generated(g, &[gen, C]);
    let a = AbelianStructure::with_generators(&sub, &[gen, C]).unwrap();
    let form = PairingForm::new(a.radix().clone(), vec![vec![0, 1], vec![-1, 0]]).unwrap();
    FormTwist::new(a, form).unwrap()
}
