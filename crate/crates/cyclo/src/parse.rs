use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::number::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed cyclotomic literal `{text}`: {reason}")]
pub struct ParseCycError {
    pub text: String,
    pub reason: String,
}

fn fail(text: &str, reason: &str) -> ParseCycError {
    ParseCycError { text: text.to_string(), reason: reason.to_string() }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl FromStr for Cyclotomic {
    type Err = ParseCycError;

    /// Parses `cyc(N)[c0,c1,...]` with coefficients `p/q` or `p`.
    fn from_str(text: &str) -> Result<Cyclotomic, ParseCycError> {
        let s = text.trim();
        let rest = s.strip_prefix("cyc(").ok_or_else(|| fail(text, "expected `cyc(`"))?;
        let (n, rest) = rest.split_once(')').ok_or_else(|| fail(text, "unclosed conductor"))?;
        let n: u32 = n.trim().parse().map_err(|_| fail(text, "bad conductor"))?;
        if n == 0 {
            return Err(fail(text, "conductor must be positive"));
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| fail(text, "expected bracketed coefficient list"))?;
        let coeffs: Vec<BigRational> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|c| parse_rational(c).ok_or_else(|| fail(text, "bad coefficient")))
                .collect::<Result<_, _>>()?
        };
        let phi = crate::euler_phi(n as u64) as usize;
        if coeffs.len() != phi {
            return Err(fail(text, &format!("expected {phi} coefficients, found {}", coeffs.len())));
        }
        Ok(Cyclotomic::from_poly(n, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_integer_form() {
        let z = Cyclotomic::root(5, 4).scale(-3, 7);
        assert_eq!(z.to_string().parse::<Cyclotomic>().unwrap(), z);
        let w: Cyclotomic = "cyc(4)[1,-2]".parse().unwrap();
        assert_eq!(w, Cyclotomic::one(4) - Cyclotomic::root(4, 1).scale(2, 1));
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!("cyc(5)[1,2]".parse::<Cyclotomic>().is_err());
        assert!("cyc(0)[]".parse::<Cyclotomic>().is_err());
        assert!("cyc(3)[1/0,1]".parse::<Cyclotomic>().is_err());
    }
}
