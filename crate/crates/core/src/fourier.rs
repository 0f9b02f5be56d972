//! Discrete Fourier transform on a finite abelian group in coordinates.

use rayon::prelude::*;
use twistlab_cyclo::Cyclotomic;

use crate::abelian::Radix;

/// f̂(k) = Σ_a f(a) ζ_e^{⟨k,a⟩}.
pub fn forward(radix: &Radix, values: &[Cyclotomic]) -> Vec<Cyclotomic> {
    transform(radix, values, 1)
}

/// f(a) = |A|⁻¹ Σ_k f̂(k) ζ_e^{-⟨k,a⟩}.
pub fn inverse(radix: &Radix, values: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let n = radix.size() as i64;
    transform(radix, values, -1).into_iter().map(|v| v.scale(1, n)).collect()
}

fn transform(radix: &Radix, values: &[Cyclotomic], sign: i64) -> Vec<Cyclotomic> {
    assert_eq!(values.len(), radix.size(), "value vector does not match the group");
    let mut data = values.to_vec();
    let divisors = radix.divisors();
    let mut stride = radix.size();
    for &d in divisors {
        let d = d as usize;
        stride /= d;
        if d == 1 {
            continue;
        }
        let roots: Vec<Cyclotomic> = (0..d).map(|j| Cyclotomic::root(d as u32, sign * j as i64)).collect();
        let block = d * stride;
        data.par_chunks_mut(block).for_each(|chunk| {
            for offset in 0..stride {
                let line: Vec<Cyclotomic> = (0..d).map(|a| chunk[offset + a * stride].clone()).collect();
                if line.iter().all(|v| v.is_zero()) {
                    continue;
                }
                for k in 0..d {
                    let mut acc: Option<Cyclotomic> = None;
                    for (a, v) in line.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let term = if (k * a) % d == 0 { v.clone() } else { v * &roots[(k * a) % d] };
                        acc = Some(match acc {
                            None => term,
                            Some(s) => &s + &term,
                        });
                    }
                    chunk[offset + k * stride] = acc.unwrap_or_else(|| Cyclotomic::zero(1));
                }
            }
        });
    }
    data
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(radix: &Radix, values: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let e = radix.exponent() as u32;
        radix
            .iter()
            .map(|k| {
                radix.iter().enumerate().fold(Cyclotomic::zero(1), |acc, (i, a)| {
                    &acc + &(&values[i] * &Cyclotomic::root(e, radix.pairing_exp(&k, &a) as i64))
                })
            })
            .collect()
    }

    #[test]
    fn matches_naive_sum_and_inverts() {
        let radix = Radix::new(vec![4, 3, 2]);
        let values: Vec<Cyclotomic> =
            (0..radix.size()).map(|i| Cyclotomic::from_ratio(3, (i * i) as i64 % 7 - 3, 1 + i as i64 % 2)).collect();
        let fast = forward(&radix, &values);
        assert_eq!(fast, naive(&radix, &values));
        assert_eq!(inverse(&radix, &fast), values);
    }
}
