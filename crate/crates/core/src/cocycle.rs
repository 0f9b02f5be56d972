//! 2-cochains on finite abelian groups with values in μ_N, stored as exponent tables.

use crate::abelian::Radix;
use crate::form::PairingForm;
use crate::{Result, TwistError};

/// e(x,y) = ζ_N^{values[x·|D| + y]} over radix indices of D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainTable {
    pub radix: Radix,
    pub modulus: u64,
    pub values: Vec<u64>,
}

/// A function u: D → μ_N as exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl CochainTable {
    pub fn new(radix: Radix, modulus: u64, values: Vec<u64>) -> CochainTable {
        let n = radix.size();
        assert_eq!(values.len(), n * n, "cochain table size");
        let values = values.into_iter().map(|v| v % modulus).collect();
        CochainTable { radix, modulus, values }
    }

    pub fn from_fn(radix: Radix, modulus: u64, f: impl Fn(&[u64], &[u64]) -> u64) -> CochainTable {
        let values = radix
            .iter()
            .flat_map(|a| radix.iter().map(|b| f(&a, &b) % modulus).collect::<Vec<_>>())
            .collect();
        CochainTable { radix, modulus, values }
    }

    pub fn at(&self, x: usize, y: usize) -> u64 {
        self.values[x * self.radix.size() + y]
    }

    fn sum(&self, x: usize, y: usize) -> usize {
        self.radix.index(&self.radix.add(&self.radix.coords(x), &self.radix.coords(y)))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.radix.size();
        (0..n).all(|x| (0..n).all(|y| self.at(x, y) == self.at(y, x)))
    }

    /// e(x,y)e(xy,z) = e(y,z)e(x,yz) on all triples.
    pub fn is_cocycle(&self) -> bool {
        let n = self.radix.size();
        let m = self.modulus;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.sum(x, y);
                (0..n).all(|z| (self.at(x, y) + self.at(xy, z)) % m == (self.at(y, z) + self.at(x, self.sum(y, z))) % m)
            })
        })
    }

    /// Alt(e)(x,y) = e(x,y)e(y,x)⁻¹ read as a bi-multiplicative form.
    pub fn alternation(&self) -> Result<PairingForm> {
        let n = self.radix.size();
        let m = self.modulus;
        let table: Vec<u64> =
            (0..n).flat_map(|x| (0..n).map(move |y| (self.at(x, y) + m - self.at(y, x)) % m)).collect();
        PairingForm::from_table(self.radix.clone(), m, &table)
    }

    /// Whether u(xy) = e(x,y)u(x)u(y) on every pair.
    pub fn is_trivialized_by(&self, u: &Cochain1) -> bool {
        let big = twistlab_cyclo::lcm(self.modulus, u.modulus);
        let (se, su) = (big / self.modulus, big / u.modulus);
        let n = self.radix.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = u.values[self.sum(x, y)] * su % big;
                let rhs = (self.at(x, y) * se + (u.values[x] + u.values[y]) * su) % big;
                lhs == rhs
            })
        })
    }
}

/// The coboundary (x,y) ↦ v(xy)v(x)⁻¹v(y)⁻¹.
pub fn coboundary(radix: &Radix, v: &Cochain1) -> CochainTable {
    let m = v.modulus;
    CochainTable::from_fn(radix.clone(), m, |a, b| {
        let ab = radix.index(&radix.add(a, b));
        (v.values[ab] + 2 * m - v.values[radix.index(a)] - v.values[radix.index(b)]) % m
    })
}

/// Solve u(xy) = e(x,y)u(x)u(y) along the generators of D.
///
/// On powers of a generator g of order d the values are forced up to the
/// choice of u(g), which must satisfy a d-th power condition; when it has
/// no solution in μ_N the working modulus is multiplied by d if
/// `allow_enlarge` is set.
pub fn trivialize_symmetric_cocycle(e: &CochainTable, allow_enlarge: bool) -> Result<Cochain1> {
    if !e.is_symmetric() {
        return Err(TwistError::Hypothesis("cochain is not symmetric".into()));
    }
    let radix = &e.radix;
    let n = radix.size();
    let mut modulus = e.modulus;
    // e rescaled to the current modulus is e.at(..) * scale
    let mut scale = 1u64;
    let ev = |x: usize, y: usize, scale: u64, m: u64| e.at(x, y) * scale % m;
    let mut u: Vec<Option<u64>> = vec![None; n];
    let zero = radix.index(&vec![0; radix.rank()]);
    u[zero] = Some((modulus - ev(zero, zero, scale, modulus)) % modulus);
    let mut known: Vec<usize> = vec![zero];
    for i in 0..radix.rank() {
        let d = radix.divisors()[i];
        if d == 1 {
            continue;
        }
        let g = radix.unit(i);
        let gi = radix.index(&g);
        let pow_idx: Vec<usize> = (0..d).map(|j| radix.index(&radix.scale(&g, j as i64))).collect();
        // with t = u(g): u(g^{j+1}) = e(g^j,g) + u(g^j) + t, and u(g^d) must equal u(1)
        let mut w = u[zero].unwrap() as i128;
        for j in 1..d as usize {
            w -= ev(pow_idx[j], gi, scale, modulus) as i128;
        }
        let mut wv = w.rem_euclid(modulus as i128) as u64;
        let g0 = twistlab_cyclo::gcd(d, modulus);
        if !wv.is_multiple_of(g0) {
            if !allow_enlarge {
                return Err(TwistError::Obstruction(format!(
                    "no {d}-th root inside μ_{modulus} while trivializing"
                )));
            }
            for v in u.iter_mut().flatten() {
                *v *= d;
            }
            scale *= d;
            wv *= d;
            modulus *= d;
        }
        let g0 = twistlab_cyclo::gcd(d, modulus);
        let m0 = modulus / g0;
        let inv = twistlab_cyclo::inverse_mod(((d / g0) % m0) as i64, m0 as i64).unwrap_or(0) as u64;
        let t = if m0 == 1 { 0 } else { (wv / g0) % m0 * inv % m0 };
        let mut powers = vec![u[zero].unwrap(); d as usize];
        powers[1] = t;
        for j in 1..d as usize - 1 {
            powers[j + 1] = (ev(pow_idx[j], gi, scale, modulus) + powers[j] + t) % modulus;
        }
        let mut next = Vec::with_capacity(known.len() * d as usize);
        for &x in &known {
            next.push(x);
            for j in 1..d as usize {
                let y = pow_idx[j];
                let xy = radix.index(&radix.add(&radix.coords(x), &radix.coords(y)));
                let val = (ev(x, y, scale, modulus) + u[x].unwrap() + powers[j]) % modulus;
                u[xy] = Some(val);
                next.push(xy);
            }
        }
        known = next;
    }
    let out = Cochain1 { modulus, values: u.into_iter().map(|v| v.expect("every element reached")).collect() };
    if !e.is_trivialized_by(&out) {
        return Err(TwistError::Hypothesis("cochain is not a symmetric cocycle".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cocycle_gives_trivial_u() {
        let r = Radix::new(vec![4, 2]);
        let e = CochainTable::from_fn(r, 4, |_, _| 0);
        let u = trivialize_symmetric_cocycle(&e, false).unwrap();
        assert!(u.values.iter().all(|&v| v == 0));
    }

    #[test]
    fn recovers_a_coboundary() {
        let r = Radix::new(vec![6, 3]);
        let v = Cochain1 { modulus: 6, values: (0..18).map(|i| (i * i * 5 + 1) % 6).collect() };
        let e = coboundary(&r, &v);
        let u = trivialize_symmetric_cocycle(&e, false).unwrap();
        assert_eq!(coboundary(&r, &u), e);
    }

    #[test]
    fn sign_cocycle_needs_fourth_roots() {
        // e(x,y) = (-1)^{x₁y₁} on (Z/2)²
        let r = Radix::new(vec![2, 2]);
        let e = CochainTable::from_fn(r, 2, |a, b| a[0] * b[0]);
        assert!(matches!(trivialize_symmetric_cocycle(&e, false), Err(TwistError::Obstruction(_))));
        let u = trivialize_symmetric_cocycle(&e, true).unwrap();
        assert_eq!(u.modulus, 4);
        assert!(e.is_trivialized_by(&u));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let r = Radix::new(vec![3, 3]);
        let e = CochainTable::from_fn(r, 3, |a, b| a[0] * b[1]);
        assert!(trivialize_symmetric_cocycle(&e, true).is_err());
        assert_eq!(e.alternation().unwrap().matrix(), &[vec![0, 1], vec![2, 0]]);
    }
}
