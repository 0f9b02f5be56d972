//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is an element of Q(ζ_N) written in the power basis
//! ζ⁰, …, ζ^{φ(N)−1} modulo the N-th cyclotomic polynomial. Numbers with
//! different conductors are lifted to the lcm before any binary operation,
//! so callers never have to align fields by hand.

mod number;
mod parse;
mod poly;
mod roots;
mod table;

pub use number::{Cyclotomic, ExactRational};
pub use parse::ParseCycError;
pub use poly::{cyclotomic_polynomial, euler_phi};
pub use roots::{as_root_exponent, mth_root_in_mu, root_of_unity, RootExponent};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("value is not a root of unity in mu_{0}")]
    NotARoot(u32),
    #[error("no canonical {m}-th root inside mu_{d}: gcd({m},{d}) != 1")]
    NoCanonicalRoot { m: u64, d: u64 },
}

/// Greatest common divisor on `u64`.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least common multiple on `u64`; `lcm(0, x) = x` so it can seed folds.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    a / gcd(a, b) * b
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}
