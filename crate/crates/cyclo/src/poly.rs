use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0) is undefined");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact division of integer polynomials (low degree first) by a monic divisor.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

/// The N-th cyclotomic polynomial, coefficients listed from the constant term up.
///
/// Computed by dividing x^N − 1 by Φ_d for every proper divisor d of N.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial needs N >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=120 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n), "N={n}");
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }
}
