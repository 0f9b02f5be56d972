use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use twistlab_cyclo::{as_root_exponent, cyclotomic_polynomial, euler_phi, root_of_unity, Cyclotomic, RootExponent};

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 25];

/// Schoolbook product in Q[x] followed by long division by Φ_N.
fn oracle_mul(n: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut prod = vec![BigRational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    let phi_poly: Vec<BigRational> = cyclotomic_polynomial(n as u64)
        .into_iter()
        .map(|c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    let deg = phi_poly.len() - 1;
    for k in (deg..prod.len()).rev() {
        let c = prod[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, p) in phi_poly.iter().enumerate() {
            prod[k - deg + i] -= &c * p;
        }
    }
    prod.truncate(deg);
    prod
}

fn arb_cyc(n: u32, max: i64) -> impl Strategy<Value = Cyclotomic> {
    let phi = euler_phi(n as u64) as usize;
    (prop::collection::vec(-max..=max, phi), 1..=max).prop_map(move |(num, den)| {
        let coeffs: Vec<BigRational> =
            num.into_iter().map(|v| BigRational::new(BigInt::from(v), BigInt::from(den))).collect();
        Cyclotomic::from_poly(n, &coeffs)
    })
}

fn arb_pair() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS).prop_flat_map(|n| (arb_cyc(n, 40), arb_cyc(n, 40), arb_cyc(n, 40)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn product_matches_polynomial_oracle((a, b, _c) in arb_pair()) {
        let n = a.conductor();
        let expected = Cyclotomic::from_poly(n, &oracle_mul(n, &a.coefficients(), &b.coefficients()));
        prop_assert_eq!(&a * &b, expected);
    }

    #[test]
    fn ring_axioms((a, b, c) in arb_pair()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_multiplies_to_one((a, _b, _c) in arb_pair()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn lifting_is_a_ring_embedding((a, b, _c) in arb_pair(), mult in 1u32..4) {
        let m = a.conductor() * mult;
        prop_assert_eq!(a.lift(m) * b.lift(m), (&a * &b).lift(m));
        prop_assert_eq!(a.lift(m), a);
    }

    #[test]
    fn serialization_roundtrips((a, _b, _c) in arb_pair()) {
        let text = a.to_string();
        let back: Cyclotomic = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn roots_of_unity_behave(n in 1u32..40, k in -100i64..100) {
        let z = root_of_unity(n, k);
        prop_assert!(z.pow(n as i64).unwrap().is_one());
        prop_assert_eq!(as_root_exponent(&z, n), RootExponent::Exponent(k.rem_euclid(n as i64) as u32));
    }
}

#[test]
fn large_coefficients_take_the_wide_path() {
    let mut z = Cyclotomic::one(7) + root_of_unity(7, 3).scale(1 << 40, 3);
    let orig = z.clone();
    for _ in 0..6 {
        z = &z * &z;
    }
    let mut back = z.clone();
    for _ in 0..63 {
        back = back.checked_div(&orig).unwrap();
    }
    assert_eq!(back, orig);
}
