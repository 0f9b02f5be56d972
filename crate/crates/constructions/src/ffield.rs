//! Prime fields and GF(p^d) in a polynomial basis, plus small linear algebra mod p.

use crate::{ConstructionError, Result};

/// a⁻¹ mod p for prime p.
pub fn inv_mod_p(a: u32, p: u32) -> u32 {
    let a = a % p;
    assert!(a != 0, "zero has no inverse mod {p}");
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64, (p - 2) as u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Row-reduce in place over F_p; returns pivot columns.
pub fn row_reduce_mod_p(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_multiple_of(p)) else { continue };
        rows.swap(r, piv);
        let s = inv_mod_p(rows[r][col], p);
        for v in rows[r].iter_mut() {
            *v = *v * s % p;
        }
        for i in 0..rows.len() {
            let f = rows[i][col] % p;
            if i != r && f != 0 {
                for k in 0..ncols {
                    rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    row_reduce_mod_p(&mut m, p).len()
}

/// Some x with M x = b over F_p, or `None` when the system is inconsistent.
pub fn solve_mod_p(m: &[Vec<u32>], b: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u32>> = m.iter().zip(b).map(|(row, &bi)| row.iter().copied().chain([bi % p]).collect()).collect();
    let pivots = row_reduce_mod_p(&mut aug, p);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n];
    }
    Some(x)
}

/// Polynomials over F_p as coefficient vectors, lowest degree first.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - f) * c % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=d/2
    for k in 1..=d / 2 {
        let count = (p as usize).pow(k as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, k);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: usize, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let v = (idx % p as usize) as u32;
            idx /= p as usize;
            v
        })
        .collect()
}

/// GF(p^d) = F_p[x]/(f) for a fixed monic irreducible f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    d: usize,
    modulus: Vec<u32>,
}

/// An element of a [`FiniteField`]: d coefficients in the power basis, lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFieldElement {
    pub coeffs: Vec<u32>,
}

impl FiniteField {
    /// The lexicographically smallest monic irreducible of degree d, comparing
    /// (c_{d-1}, …, c_0) with the highest coefficient most significant.
    pub fn new(p: u32, d: usize) -> Result<FiniteField> {
        if p < 2 || (2..p).any(|q| q * q <= p && p.is_multiple_of(q)) {
            return Err(ConstructionError::InvalidParameter(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(ConstructionError::InvalidParameter("degree must be positive".into()));
        }
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut f: Vec<u32> = digits(idx, p, d);
            f.push(1);
            if d == 1 || (f[0] != 0 && is_irreducible(&f, p)) {
                return Ok(FiniteField { p, d, modulus: f });
            }
        }
        Err(ConstructionError::Search(format!("no irreducible polynomial of degree {d} over F_{p}")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.d as u32)
    }

    /// Coefficients of the defining polynomial, lowest first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// e.g. `x^5 + 2x + 1`.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        parts.join(" + ")
    }

    pub fn zero(&self) -> FiniteFieldElement {
        FiniteFieldElement { coeffs: vec![0; self.d] }
    }

    pub fn one(&self) -> FiniteFieldElement {
        self.from_prime(1)
    }

    pub fn from_prime(&self, a: u32) -> FiniteFieldElement {
        let mut c = vec![0; self.d];
        c[0] = a % self.p;
        FiniteFieldElement { coeffs: c }
    }

    /// The class of x.
    pub fn generator(&self) -> FiniteFieldElement {
        if self.d == 1 {
            let mut c = vec![0; 1];
            c[0] = (self.p - self.modulus[0]) % self.p;
            return FiniteFieldElement { coeffs: c };
        }
        self.basis(1)
    }

    /// x^i for i < d.
    pub fn basis(&self, i: usize) -> FiniteFieldElement {
        let mut c = vec![0; self.d];
        c[i] = 1;
        FiniteFieldElement { coeffs: c }
    }

    /// Element with base-p digits of `index` as coefficients (lowest first).
    pub fn element(&self, index: usize) -> FiniteFieldElement {
        FiniteFieldElement { coeffs: digits(index, self.p, self.d) }
    }

    pub fn index(&self, a: &FiniteFieldElement) -> usize {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FiniteFieldElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        FiniteFieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect() }
    }

    pub fn neg(&self, a: &FiniteFieldElement) -> FiniteFieldElement {
        FiniteFieldElement { coeffs: a.coeffs.iter().map(|x| (self.p - x) % self.p).collect() }
    }

    pub fn sub(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FiniteFieldElement, k: u32) -> FiniteFieldElement {
        FiniteFieldElement { coeffs: a.coeffs.iter().map(|x| x * (k % self.p) % self.p).collect() }
    }

    pub fn mul(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        let mut prod = vec![0u32; 2 * self.d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.d, 0);
        FiniteFieldElement { coeffs: r }
    }

    pub fn pow(&self, a: &FiniteFieldElement, mut e: u64) -> FiniteFieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn inverse(&self, a: &FiniteFieldElement) -> Option<FiniteFieldElement> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, self.order() as u64 - 2))
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: &FiniteFieldElement) -> FiniteFieldElement {
        self.pow(a, self.p as u64)
    }

    /// Tr(a) = Σ a^{p^i}, an element of the prime field.
    pub fn trace(&self, a: &FiniteFieldElement) -> u32 {
        let mut acc = self.zero();
        let mut x = a.clone();
        for _ in 0..self.d {
            acc = self.add(&acc, &x);
            x = self.frobenius(&x);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace lands in the prime field");
        acc.coeffs[0]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FiniteFieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let n = self.order() as u64 - 1;
        let mut order = n;
        let mut m = n;
        let mut q = 2;
        while q * q <= m {
            if m.is_multiple_of(q) {
                while m.is_multiple_of(q) {
                    m /= q;
                }
                while order.is_multiple_of(q) && self.pow(a, order / q).is_one() {
                    order /= q;
                }
            }
            q += 1;
        }
        if m > 1 && self.pow(a, order / m).is_one() {
            order /= m;
        }
        order
    }
}

impl FiniteFieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_quintic_over_f3() {
        let f = FiniteField::new(3, 5).unwrap();
        assert_eq!(f.modulus(), &[1, 2, 0, 0, 0, 1]);
        assert_eq!(f.modulus_string(), "x^5 + 2x + 1");
    }

    #[test]
    fn gf4_multiplication() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.generator();
        assert_eq!(f.multiplicative_order(&x), 3);
        assert_eq!(f.trace(&x), 1);
    }

    #[test]
    fn solve_and_rank() {
        let m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank_mod_p(&m, 5), 1);
        assert!(solve_mod_p(&m, &[1, 3], 5).is_none());
        let x = solve_mod_p(&m, &[1, 2], 5).unwrap();
        assert_eq!((x[0] + 2 * x[1]) % 5, 1);
    }
}
