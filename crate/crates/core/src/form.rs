//! Bi-multiplicative forms β(gᵢ,gⱼ) = ζ_e^{m_ij} on a group in coordinates.

use std::fmt;
use std::str::FromStr;

use twistlab_cyclo::{gcd, Cyclotomic};

use crate::abelian::{apply_action, Radix};
use crate::{Result, TwistError};

/// A bi-multiplicative form stored on generator pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairingForm {
    radix: Radix,
    matrix: Vec<Vec<u64>>,
}

/// Exactly decided properties of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FormFlags {
    pub bimultiplicative: bool,
    pub alternating: bool,
    pub skew_symmetric: bool,
    pub nondegenerate: bool,
    /// `None` when no ambient action was supplied.
    pub invariant: Option<bool>,
}

/// Constraints for [`enumerate_invariant_forms`].
#[derive(Debug, Clone, Default)]
pub struct FormRequirements {
    pub alternating: bool,
    pub skew_symmetric: bool,
    pub nondegenerate: bool,
    /// Automorphisms (images of the basis) that must preserve the form.
    pub invariant_under: Vec<Vec<Vec<u64>>>,
}

impl PairingForm {
    /// Build from exponents mod e = exp(radix); rejects ill-defined entries.
    pub fn new(radix: Radix, matrix: Vec<Vec<i64>>) -> Result<PairingForm> {
        let r = radix.rank();
        let e = radix.exponent() as i64;
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(TwistError::Hypothesis(format!("form matrix must be {r}×{r}")));
        }
        let matrix: Vec<Vec<u64>> =
            matrix.iter().map(|row| row.iter().map(|&m| m.rem_euclid(e) as u64).collect()).collect();
        let form = PairingForm { radix, matrix };
        if !form.well_defined() {
            return Err(TwistError::Hypothesis("form entries are not compatible with the generator orders".into()));
        }
        Ok(form)
    }

    pub fn trivial(radix: Radix) -> PairingForm {
        let r = radix.rank();
        PairingForm { radix, matrix: vec![vec![0; r]; r] }
    }

    /// Read a form off a full table of exponents mod n over all pairs.
    /// Fails unless the table is bi-multiplicative.
    pub fn from_table(radix: Radix, n: u64, table: &[u64]) -> Result<PairingForm> {
        let size = radix.size();
        assert_eq!(table.len(), size * size, "table size");
        let e = radix.exponent();
        let sum = |a: usize, b: usize| radix.index(&radix.add(&radix.coords(a), &radix.coords(b)));
        let at = |a: usize, b: usize| table[a * size + b] % n;
        let bimult = (0..size).all(|a| {
            (0..size).all(|b| {
                let ab = sum(a, b);
                (0..size).all(|c| {
                    (at(ab, c) + n * 2 - at(a, c) - at(b, c)).is_multiple_of(n)
                        && (at(c, ab) + n * 2 - at(c, a) - at(c, b)).is_multiple_of(n)
                })
            })
        });
        if !bimult {
            return Err(TwistError::Hypothesis("table is not bi-multiplicative".into()));
        }
        let r = radix.rank();
        let mut matrix = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let v = at(radix.index(&radix.unit(i)), radix.index(&radix.unit(j)));
                let scaled = v as u128 * e as u128;
                if !scaled.is_multiple_of(n as u128) {
                    return Err(TwistError::Hypothesis("table values exceed the group exponent".into()));
                }
                matrix[i][j] = (scaled / n as u128) as u64 % e;
            }
        }
        Ok(PairingForm { radix, matrix })
    }

    fn well_defined(&self) -> bool {
        let d = self.radix.divisors();
        let e = self.radix.exponent() as u128;
        self.matrix.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &m)| (d[i] as u128 * m as u128).is_multiple_of(e) && (d[j] as u128 * m as u128).is_multiple_of(e))
        })
    }

    pub fn radix(&self) -> &Radix {
        &self.radix
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn exponent(&self) -> u64 {
        self.radix.exponent()
    }

    /// β(a,b) as an exponent of ζ_e.
    pub fn exp(&self, a: &[u64], b: &[u64]) -> u64 {
        let e = self.exponent() as u128;
        let mut s: u128 = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s = (s + ai as u128 * bj as u128 % e * self.matrix[i][j] as u128) % e;
            }
        }
        s as u64
    }

    pub fn value(&self, a: &[u64], b: &[u64]) -> Cyclotomic {
        Cyclotomic::root(self.exponent() as u32, self.exp(a, b) as i64)
    }

    /// Order of the root of unity β(a,b).
    pub fn value_order(&self, a: &[u64], b: &[u64]) -> u64 {
        let e = self.exponent();
        e / gcd(self.exp(a, b), e)
    }

    pub fn transpose(&self) -> PairingForm {
        let r = self.radix.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| self.matrix[j][i]).collect()).collect();
        PairingForm { radix: self.radix.clone(), matrix }
    }

    /// Pointwise product of two forms on the same group.
    pub fn mul(&self, other: &PairingForm) -> PairingForm {
        assert_eq!(self.radix, other.radix, "forms on different groups");
        let e = self.exponent();
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(&a, &b)| (a + b) % e).collect())
            .collect();
        PairingForm { radix: self.radix.clone(), matrix }
    }

    pub fn pow(&self, k: i64) -> PairingForm {
        let e = self.exponent() as i128;
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&m| (m as i128 * k as i128).rem_euclid(e) as u64).collect())
            .collect();
        PairingForm { radix: self.radix.clone(), matrix }
    }

    pub fn inverse(&self) -> PairingForm {
        self.pow(-1)
    }

    pub fn is_trivial(&self) -> bool {
        self.matrix.iter().flatten().all(|&m| m == 0)
    }

    /// Alt(β)(s,t) = β(s,t)β(t,s)⁻¹.
    pub fn alternation(&self) -> PairingForm {
        self.mul(&self.transpose().inverse())
    }

    /// β(a,a) = 1 for all a.
    pub fn is_alternating(&self) -> bool {
        let e = self.exponent();
        let r = self.radix.rank();
        (0..r).all(|i| self.matrix[i][i] == 0 && (0..r).all(|j| (self.matrix[i][j] + self.matrix[j][i]).is_multiple_of(e)))
    }

    /// β(a,b)β(b,a) = 1 for all a, b.
    pub fn is_skew_symmetric(&self) -> bool {
        let e = self.exponent();
        let r = self.radix.rank();
        (0..r).all(|i| (0..r).all(|j| (self.matrix[i][j] + self.matrix[j][i]).is_multiple_of(e)))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Left kernel {a : β(a,·) = 1}.
    pub fn left_radical(&self) -> Vec<Vec<u64>> {
        let r = self.radix.rank();
        self.radix.iter().filter(|a| (0..r).all(|j| self.exp(a, &self.radix.unit(j)) == 0)).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.left_radical().len() == 1
    }

    /// Invariance under automorphisms given by images of the basis.
    pub fn is_invariant(&self, actions: &[Vec<Vec<u64>>]) -> bool {
        let r = self.radix.rank();
        actions
            .iter()
            .all(|img| (0..r).all(|i| (0..r).all(|j| self.exp(&img[i], &img[j]) == self.matrix[i][j])))
    }

    pub fn flags(&self, actions: Option<&[Vec<Vec<u64>>]>) -> FormFlags {
        FormFlags {
            bimultiplicative: self.well_defined(),
            alternating: self.is_alternating(),
            skew_symmetric: self.is_skew_symmetric(),
            nondegenerate: self.is_nondegenerate(),
            invariant: actions.map(|a| self.is_invariant(a)),
        }
    }

    /// β^{(e+1)/2}, whose alternation is β when β is alternating of odd exponent.
    pub fn alt_inverse_odd(&self) -> Result<PairingForm> {
        let e = self.exponent();
        if e.is_multiple_of(2) {
            return Err(TwistError::EvenExponent(e));
        }
        if !self.is_alternating() {
            return Err(TwistError::Hypothesis("form is not alternating".into()));
        }
        Ok(self.pow(e.div_ceil(2) as i64))
    }

    /// The map a ↦ β(a,·) as character exponent vectors.
    pub fn left_adjoint(&self, a: &[u64]) -> Vec<u64> {
        let d = self.radix.divisors();
        let e = self.exponent();
        (0..self.radix.rank()).map(|j| self.exp(a, &self.radix.unit(j)) / (e / d[j]) % d[j]).collect()
    }

    /// The form b on the dual group with b(χ,ψ) = ψ(x) whenever β(x,·) = χ.
    /// Characters use dual-basis coordinates, so the output lives on the same radix.
    pub fn adjoint_dual_form(&self) -> Result<PairingForm> {
        if !self.is_nondegenerate() {
            return Err(TwistError::Degenerate);
        }
        let r = self.radix.rank();
        let e = self.exponent();
        let d = self.radix.divisors().to_vec();
        let mut preimage: Vec<Option<Vec<u64>>> = vec![None; r];
        for a in self.radix.iter() {
            let k = self.left_adjoint(&a);
            for (i, slot) in preimage.iter_mut().enumerate() {
                if slot.is_none() && k == self.radix.unit(i) {
                    *slot = Some(a.clone());
                }
            }
        }
        let mut matrix = vec![vec![0u64; r]; r];
        for i in 0..r {
            let x = preimage[i].as_ref().ok_or(TwistError::Degenerate)?;
            for j in 0..r {
                matrix[i][j] = x[j] % d[j] * (e / d[j]) % e;
            }
        }
        Ok(PairingForm { radix: self.radix.clone(), matrix })
    }

    /// B^⊥ = {a : β(a,b) = 1 for all b ∈ B}; B given by generators in coordinates.
    pub fn orthogonal_complement(&self, b_gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        self.radix.iter().filter(|a| b_gens.iter().all(|b| self.exp(a, b) == 0)).collect()
    }

    pub fn is_isotropic(&self, b_members: &[Vec<u64>]) -> bool {
        b_members.iter().all(|x| b_members.iter().all(|y| self.exp(x, y) == 0))
    }

    /// B = B^⊥ for the subgroup with these members.
    pub fn is_lagrangian(&self, b_members: &[Vec<u64>]) -> bool {
        let mut perp = self.orthogonal_complement(b_members);
        let mut members = b_members.to_vec();
        perp.sort();
        members.sort();
        members.dedup();
        perp == members
    }

    /// β∘(φ×φ) for an endomorphism φ given by images of the basis.
    pub fn pullback(&self, images: &[Vec<u64>]) -> PairingForm {
        let r = self.radix.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| self.exp(&images[i], &images[j])).collect()).collect();
        PairingForm { radix: self.radix.clone(), matrix }
    }

    /// β(φa, φb).
    pub fn exp_after(&self, images: &[Vec<u64>], a: &[u64], b: &[u64]) -> u64 {
        self.exp(&apply_action(&self.radix, images, a), &apply_action(&self.radix, images, b))
    }
}

/// All forms on the radix meeting the requirements, in lexicographic matrix order.
pub fn enumerate_invariant_forms(radix: &Radix, req: &FormRequirements, cap: usize) -> Result<Vec<PairingForm>> {
    let r = radix.rank();
    let d = radix.divisors();
    let e = radix.exponent();
    let antisym = req.alternating || req.skew_symmetric;
    // free slots (i, j, number of admissible values)
    let mut slots: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if antisym && j < i {
                continue;
            }
            if req.alternating && i == j {
                continue;
            }
            let g = gcd(d[i], d[j]);
            let choices = if antisym && i == j { if g.is_multiple_of(2) { 2 } else { 1 } } else { g };
            if choices > 1 {
                slots.push((i, j, choices));
            }
        }
    }
    let total = slots.iter().try_fold(1usize, |acc, &(_, _, c)| acc.checked_mul(c as usize)).unwrap_or(usize::MAX);
    if total > cap {
        return Err(TwistError::CapExceeded { what: "form enumeration", size: total, cap });
    }
    let mut out = Vec::new();
    let mut counters = vec![0u64; slots.len()];
    loop {
        let mut m = vec![vec![0u64; r]; r];
        for (&(i, j, _), &c) in slots.iter().zip(&counters) {
            let v = if antisym && i == j { c * (e / 2) } else { c * (e / gcd(d[i], d[j])) % e };
            m[i][j] = v;
            if antisym && i != j {
                m[j][i] = (e - v) % e;
            }
        }
        let form = PairingForm { radix: radix.clone(), matrix: m };
        let ok = form.well_defined()
            && (!req.alternating || form.is_alternating())
            && (!req.skew_symmetric || form.is_skew_symmetric())
            && (!req.nondegenerate || form.is_nondegenerate())
            && form.is_invariant(&req.invariant_under);
        if ok {
            out.push(form);
        }
        let mut pos = 0;
        loop {
            if pos == slots.len() {
                out.sort_by(|a, b| a.matrix.cmp(&b.matrix));
                out.dedup();
                return Ok(out);
            }
            counters[pos] += 1;
            if counters[pos] < slots[pos].2 {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

impl fmt::Display for PairingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let divs: Vec<String> = self.radix.divisors().iter().map(|d| d.to_string()).collect();
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "form[{}][{}]", divs.join(","), rows.join(","))
    }
}

impl FromStr for PairingForm {
    type Err = TwistError;

    fn from_str(s: &str) -> Result<PairingForm> {
        let bad = |why: &str| TwistError::Hypothesis(format!("cannot parse form `{s}`: {why}"));
        let body = s.trim().strip_prefix("form[").ok_or_else(|| bad("missing `form[`"))?;
        let (divs, rest) = body.split_once(']').ok_or_else(|| bad("unterminated divisor list"))?;
        let divisors: Vec<u64> = if divs.trim().is_empty() {
            Vec::new()
        } else {
            divs.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| bad("bad divisor"))).collect::<Result<_>>()?
        };
        if divisors.contains(&0) {
            return Err(bad("zero divisor"));
        }
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("missing matrix brackets"))?;
        let mut rows = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let row = rest.strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
            let (row, tail) = row.split_once(']').ok_or_else(|| bad("unterminated row"))?;
            let vals: Vec<i64> = if row.trim().is_empty() {
                Vec::new()
            } else {
                row.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| bad("bad entry"))).collect::<Result<_>>()?
            };
            rows.push(vals);
            let tail = tail.trim_start();
            rest = tail.strip_prefix(',').unwrap_or(tail).trim_start();
        }
        PairingForm::new(Radix::new(divisors), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std5() -> PairingForm {
        PairingForm::new(Radix::new(vec![5, 5]), vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn alternation_of_upper_form() {
        let beta = PairingForm::new(Radix::new(vec![5, 5]), vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(beta.alternation(), std5());
    }

    #[test]
    fn alt_inverse_is_cube_for_five() {
        let alpha = std5();
        let beta = alpha.alt_inverse_odd().unwrap();
        assert_eq!(beta, alpha.pow(3));
        assert_eq!(beta.alternation(), alpha);
    }

    #[test]
    fn alt_inverse_for_nine_is_fifth_power() {
        let alpha = PairingForm::new(Radix::new(vec![9, 9]), vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let beta = alpha.alt_inverse_odd().unwrap();
        assert_eq!(beta, alpha.pow(5));
        assert_eq!(beta.alternation(), alpha);
    }

    #[test]
    fn alt_inverse_rejects_even_exponent() {
        let alpha = PairingForm::new(Radix::new(vec![2, 2]), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(alpha.alt_inverse_odd(), Err(TwistError::EvenExponent(2)));
    }

    #[test]
    fn ill_defined_entries_are_rejected() {
        assert!(PairingForm::new(Radix::new(vec![2, 4]), vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(PairingForm::new(Radix::new(vec![2, 4]), vec![vec![0, 2], vec![0, 0]]).is_ok());
    }

    #[test]
    fn adjoint_of_identity_pairing() {
        let id = PairingForm::new(Radix::new(vec![5, 5]), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.adjoint_dual_form().unwrap(), id);
        let b = std5().adjoint_dual_form().unwrap();
        assert_eq!(b.matrix(), &[vec![0, 4], vec![1, 0]]);
        assert_eq!(b.adjoint_dual_form().unwrap(), std5());
    }

    #[test]
    fn trivial_form_is_degenerate() {
        let t = PairingForm::trivial(Radix::new(vec![3]));
        assert!(!t.is_nondegenerate());
        assert_eq!(t.adjoint_dual_form(), Err(TwistError::Degenerate));
        assert!(PairingForm::trivial(Radix::new(vec![])).is_nondegenerate());
    }

    #[test]
    fn complements_in_z5_squared() {
        let beta = std5();
        let b: Vec<Vec<u64>> = (0..5).map(|i| vec![i, 0]).collect();
        assert!(beta.is_lagrangian(&b));
        assert_eq!(beta.orthogonal_complement(&[vec![1, 0], vec![0, 1]]), vec![vec![0, 0]]);
    }

    #[test]
    fn enumeration_counts() {
        let req = FormRequirements { alternating: true, nondegenerate: true, ..Default::default() };
        assert!(enumerate_invariant_forms(&Radix::new(vec![5]), &req, 100).unwrap().is_empty());
        assert_eq!(enumerate_invariant_forms(&Radix::new(vec![3, 3]), &req, 100).unwrap().len(), 2);
        let all = FormRequirements::default();
        assert_eq!(enumerate_invariant_forms(&Radix::new(vec![3, 3]), &all, 100).unwrap().len(), 81);
        assert!(enumerate_invariant_forms(&Radix::new(vec![3, 3]), &all, 80).is_err());
    }

    #[test]
    fn table_round_trip() {
        let f = std5();
        let r = f.radix().clone();
        let table: Vec<u64> = r.iter().flat_map(|a| r.iter().map(|b| f.exp(&a, &b)).collect::<Vec<_>>()).collect();
        assert_eq!(PairingForm::from_table(r.clone(), 5, &table).unwrap(), f);
        let mut broken = table.clone();
        broken[7] = (broken[7] + 1) % 5;
        assert!(PairingForm::from_table(r, 5, &broken).is_err());
    }

    #[test]
    fn display_round_trip() {
        let f = std5();
        assert_eq!(f.to_string(), "form[5,5][[0,1],[4,0]]");
        assert_eq!(f.to_string().parse::<PairingForm>().unwrap(), f);
        let t = PairingForm::trivial(Radix::new(vec![]));
        assert_eq!(t.to_string().parse::<PairingForm>().unwrap(), t);
    }
}
