use crate::number::Cyclotomic;
use crate::{gcd, inverse_mod, CycloError};

/// ζ_N^k in canonical form.
pub fn root_of_unity(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root(n, k)
}

/// Result of [`as_root_exponent`]: either `z = ζ_N^k` or an explicit miss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootExponent {
    Exponent(u32),
    NotARoot,
}

impl RootExponent {
    pub fn exponent(self) -> Option<u32> {
        match self {
            RootExponent::Exponent(k) => Some(k),
            RootExponent::NotARoot => None,
        }
    }
}

/// Find k with z = ζ_N^k by scanning k = 0..N-1.
pub fn as_root_exponent(z: &Cyclotomic, n: u32) -> RootExponent {
    let zc = z.conductor();
    let m = crate::lcm(n as u64, zc as u64) as u32;
    let lifted = z.lift(m);
    let step = (m / n) as i64;
    for k in 0..n {
        if lifted == Cyclotomic::root(m, k as i64 * step) {
            return RootExponent::Exponent(k);
        }
    }
    RootExponent::NotARoot
}

/// The canonical m-th root of a root of unity z of order d, namely z^{m⁻¹ mod d}.
pub fn mth_root_in_mu(z: &Cyclotomic, m: u64) -> Result<Cyclotomic, CycloError> {
    let n = z.conductor();
    let k = as_root_exponent(z, n).exponent().ok_or(CycloError::NotARoot(n))? as u64;
    let d = n as u64 / gcd(n as u64, k);
    if gcd(m, d) != 1 {
        return Err(CycloError::NoCanonicalRoot { m, d });
    }
    let inv = inverse_mod(m as i64, d as i64).expect("coprime");
    // z = ζ_n^k has order d; raise to m⁻¹ mod d
    Ok(Cyclotomic::root(n, k as i64 * inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_zero_is_one() {
        assert!(root_of_unity(5, 0).is_one());
    }

    #[test]
    fn exponent_of_product() {
        let z = &root_of_unity(5, 3) * &root_of_unity(5, 4);
        assert_eq!(as_root_exponent(&z, 5), RootExponent::Exponent(2));
    }

    #[test]
    fn two_is_not_a_root() {
        assert_eq!(as_root_exponent(&Cyclotomic::from_i64(5, 2), 5), RootExponent::NotARoot);
    }

    #[test]
    fn cube_roots_in_mu5() {
        for a in 0..5 {
            let r = mth_root_in_mu(&root_of_unity(5, a), 3).unwrap();
            assert_eq!(r, root_of_unity(5, 2 * a));
            assert_eq!(r.pow(3).unwrap(), root_of_unity(5, a));
        }
        assert!(mth_root_in_mu(&Cyclotomic::one(5), 3).unwrap().is_one());
    }

    #[test]
    fn cube_root_of_zeta3_is_refused() {
        assert_eq!(
            mth_root_in_mu(&root_of_unity(3, 1), 3),
            Err(CycloError::NoCanonicalRoot { m: 3, d: 3 })
        );
    }

    #[test]
    fn root_lives_in_smaller_field_than_conductor() {
        // ζ_15^5 = ζ_3 has order 3, so a 5th root exists even though gcd(5,15) != 1
        let z = root_of_unity(15, 5);
        let r = mth_root_in_mu(&z, 5).unwrap();
        assert_eq!(r.pow(5).unwrap(), z);
    }
}
