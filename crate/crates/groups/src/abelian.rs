use std::collections::HashMap;

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A direct-sum decomposition A = ⟨g₁⟩ ⊕ … ⊕ ⟨g_r⟩ with d₁ ≥ d₂ ≥ …, each
/// dividing the previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub generators: Vec<usize>,
    pub divisors: Vec<u64>,
    /// Element → exponent vector (aᵢ mod dᵢ).
    pub coords: HashMap<usize, Vec<u64>>,
}

impl CyclicDecomposition {
    pub fn exponent(&self) -> u64 {
        self.divisors.iter().fold(1, |a, &d| lcm(a, d))
    }
}

/// Split a finite abelian group into cyclic factors.
///
/// At each step the element of largest order modulo the span so far is
/// taken (least element on ties), corrected by the existing generators so
/// that its order equals its order modulo the span, and appended.
/// `elements` must be closed under `mul` and contain `identity`.
pub fn decompose_abelian(
    elements: &[usize],
    identity: usize,
    mul: &dyn Fn(usize, usize) -> usize,
) -> CyclicDecomposition {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    let mut coords: HashMap<usize, Vec<u64>> = HashMap::from([(identity, Vec::new())]);
    let mut generators = Vec::new();
    let mut divisors: Vec<u64> = Vec::new();
    let power = |x: usize, k: u64| (0..k).fold(identity, |acc, _| mul(acc, x));
    while coords.len() < sorted.len() {
        let mut best: Option<(u64, usize, Vec<u64>)> = None;
        for &x in &sorted {
            if coords.contains_key(&x) {
                continue;
            }
            let mut k = 1;
            let mut y = x;
            while !coords.contains_key(&y) {
                y = mul(y, x);
                k += 1;
            }
            if best.as_ref().is_none_or(|b| k > b.0) {
                best = Some((k, x, coords[&y].clone()));
            }
        }
        let (e, x, t) = best.expect("span is a proper subgroup");
        let mut g = x;
        for (i, (&ti, &di)) in t.iter().zip(&divisors).enumerate() {
            debug_assert_eq!(ti % e, 0, "maximal-order lift failed");
            let shift = (di - (ti / e) % di) % di;
            g = mul(g, power(generators[i], shift));
        }
        let old: Vec<(usize, Vec<u64>)> = coords.drain().collect();
        let mut gj = identity;
        for j in 0..e {
            for (s, c) in &old {
                let mut v = c.clone();
                v.push(j);
                coords.insert(mul(*s, gj), v);
            }
            gj = mul(gj, g);
        }
        generators.push(g);
        divisors.push(e);
    }
    CyclicDecomposition { generators, divisors, coords }
}
