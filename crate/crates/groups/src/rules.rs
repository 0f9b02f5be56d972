//! Stock multiplication rules: abelian products, permutations and
//! invertible matrices over prime fields.

use crate::group::GroupRule;

/// Z/d₁ × … × Z/d_r, one byte per coordinate.
#[derive(Debug, Clone)]
pub(crate) struct AbelianRule {
    pub divisors: Vec<u64>,
}

impl GroupRule for AbelianRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter()
            .zip(b)
            .zip(&self.divisors)
            .map(|((x, y), d)| ((*x as u64 + *y as u64) % d) as u8)
            .collect()
    }
    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        a.iter().zip(&self.divisors).map(|(x, d)| ((d - *x as u64) % d) as u8).collect()
    }
    fn identity(&self) -> Vec<u8> {
        vec![0; self.divisors.len()]
    }
    fn label(&self, a: &[u8]) -> String {
        format!("{:?}", a)
    }
}

/// Permutations of `0..degree`, composed right-to-left: (στ)(i) = σ(τ(i)).
/// Points are stored as big-endian u16 so byte order matches numeric order.
#[derive(Debug, Clone)]
pub struct PermutationRule {
    pub degree: usize,
}

impl PermutationRule {
    pub fn encode(images: &[usize]) -> Vec<u8> {
        images.iter().flat_map(|&p| (p as u16).to_be_bytes()).collect()
    }

    pub fn decode(enc: &[u8]) -> Vec<usize> {
        enc.chunks(2).map(|c| u16::from_be_bytes([c[0], c[1]]) as usize).collect()
    }

    /// Encode a product of cycles on points `1..=degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Vec<u8>> {
        let mut images: Vec<usize> = (0..degree).collect();
        // rightmost cycle acts first
        for cycle in cycles.iter().rev() {
            if cycle.iter().any(|&p| p == 0 || p > degree) {
                return None;
            }
            let mut seen = std::collections::HashSet::new();
            if !cycle.iter().all(|p| seen.insert(*p)) {
                return None;
            }
            let mut step: Vec<usize> = (0..degree).collect();
            for (i, &p) in cycle.iter().enumerate() {
                step[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
            images = step.iter().map(|&x| images[x]).collect();
        }
        Some(PermutationRule::encode(&images))
    }
}

impl GroupRule for PermutationRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let (pa, pb) = (PermutationRule::decode(a), PermutationRule::decode(b));
        PermutationRule::encode(&pb.iter().map(|&x| pa[x]).collect::<Vec<_>>())
    }
    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        let p = PermutationRule::decode(a);
        let mut inv = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        PermutationRule::encode(&inv)
    }
    fn identity(&self) -> Vec<u8> {
        PermutationRule::encode(&(0..self.degree).collect::<Vec<_>>())
    }
    fn label(&self, a: &[u8]) -> String {
        let p = PermutationRule::decode(a);
        let mut seen = vec![false; p.len()];
        let mut out = String::new();
        for start in 0..p.len() {
            if seen[start] || p[start] == start {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut x = p[start];
            while x != start {
                seen[x] = true;
                cyc.push(x + 1);
                x = p[x];
            }
            out.push_str(&format!(
                "({})",
                cyc.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

/// Invertible `dim × dim` matrices over F_p, row-major, one byte per entry.
#[derive(Debug, Clone)]
pub struct MatrixRule {
    pub p: u8,
    pub dim: usize,
}

impl MatrixRule {
    fn mul_raw(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let (d, p) = (self.dim, self.p as u32);
        let mut out = vec![0u8; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0u32;
                for k in 0..d {
                    s += a[i * d + k] as u32 * b[k * d + j] as u32;
                }
                out[i * d + j] = (s % p) as u8;
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; `None` for singular input.
    pub fn invert(&self, a: &[u8]) -> Option<Vec<u8>> {
        let (d, p) = (self.dim, self.p as i64);
        let mut m: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        let mut inv: Vec<i64> = (0..d * d).map(|i| (i / d == i % d) as i64).collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| m[r * d + col] % p != 0)?;
            for k in 0..d {
                m.swap(piv * d + k, col * d + k);
                inv.swap(piv * d + k, col * d + k);
            }
            let s = mod_inverse(m[col * d + col], p);
            for k in 0..d {
                m[col * d + k] = m[col * d + k] * s % p;
                inv[col * d + k] = inv[col * d + k] * s % p;
            }
            for r in 0..d {
                let f = m[r * d + col] % p;
                if r != col && f != 0 {
                    for k in 0..d {
                        m[r * d + k] = (m[r * d + k] - f * m[col * d + k]).rem_euclid(p);
                        inv[r * d + k] = (inv[r * d + k] - f * inv[col * d + k]).rem_euclid(p);
                    }
                }
            }
        }
        Some(inv.into_iter().map(|x| x.rem_euclid(p) as u8).collect())
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    (1..p).find(|x| a * x % p == 1).expect("nonzero residue mod a prime")
}

impl GroupRule for MatrixRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        self.mul_raw(a, b)
    }
    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        self.invert(a).expect("group elements are invertible")
    }
    fn identity(&self) -> Vec<u8> {
        (0..self.dim * self.dim).map(|i| (i / self.dim == i % self.dim) as u8).collect()
    }
    fn label(&self, a: &[u8]) -> String {
        let rows: Vec<String> = a
            .chunks(self.dim)
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}
