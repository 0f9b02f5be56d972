//! Commutators of anti-symmetric form twists and the tri-multiplicative invariant c.

use twistlab_cyclo::{gcd, inverse_mod, lcm, Cyclotomic};
use twistlab_groups::Subgroup;

use crate::abelian::AbelianStructure;
use crate::algebra::AlgebraElement;
use crate::config::Limits;
use crate::hopf::coboundary_of_unit;
use crate::tensor::TensorElement;
use crate::twist::{from_dual_table, from_dual_values, FormTwist};
use crate::{Result, TwistError};

/// F₁F₂F₁⁻¹F₂⁻¹.
pub fn commutator_twist(t1: &FormTwist, t2: &FormTwist, limits: &Limits) -> Result<TensorElement> {
    let f1 = t1.realized();
    let f2 = t2.realized();
    let f1inv = f1.inverse_with(limits)?;
    let f2inv = f2.inverse_with(limits)?;
    Ok(f1.mul(f2).mul(&f1inv).mul(&f2inv))
}

/// c(χ₁,χ₂,χ₃) on the dual of B = [A₁,A₂], as exponents of ζ_e with e = exp(B).
#[derive(Debug, Clone, PartialEq)]
pub struct TriformInvariant {
    pub base: AbelianStructure,
    pub values: Vec<u64>,
}

impl TriformInvariant {
    fn n(&self) -> usize {
        self.base.order()
    }

    pub fn exponent(&self) -> u64 {
        self.base.exponent()
    }

    /// Exponent of c at character indices (i, j, k).
    pub fn at(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.n();
        self.values[(i * n + j) * n + k]
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> Cyclotomic {
        Cyclotomic::root(self.exponent() as u32, self.at(i, j, k) as i64)
    }

    fn char_mul(&self, i: usize, j: usize) -> usize {
        let r = self.base.radix();
        r.index(&r.add(&r.coords(i), &r.coords(j)))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Invariant under all slot permutations.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let v = self.at(i, j, k);
                    v == self.at(k, j, i) && v == self.at(i, k, j)
                })
            })
        })
    }

    /// Multiplicative in each slot (the table is symmetric, so the first slot suffices
    /// once symmetry holds; all three are checked anyway).
    pub fn is_trimultiplicative(&self) -> bool {
        let n = self.n();
        let e = self.exponent();
        let gens: Vec<usize> = (0..self.base.radix().rank()).map(|i| self.base.radix().index(&self.base.radix().unit(i))).collect();
        gens.iter().all(|&g| {
            (0..n).all(|x| {
                let gx = self.char_mul(g, x);
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        (self.at(g, y, z) + self.at(x, y, z)) % e == self.at(gx, y, z)
                            && (self.at(y, g, z) + self.at(y, x, z)) % e == self.at(y, gx, z)
                            && (self.at(y, z, g) + self.at(y, z, x)) % e == self.at(y, z, gx)
                    })
                })
            })
        })
    }
}

/// The commutator subgroup [A₁,A₂] with its automatic decomposition.
pub fn commutator_subgroup(t1: &FormTwist, t2: &FormTwist) -> Result<AbelianStructure> {
    let g = t1.group();
    let mut gens: Vec<usize> = Vec::new();
    for &a in t1.structure().elements() {
        for &b in t2.structure().elements() {
            gens.push(g.commutator(a, b));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    AbelianStructure::from_subgroup(&Subgroup::generated(g, &gens))
}

/// x ∈ A with α(x, y) = χ(y) for all y in B, scanning A in radix order.
fn solve_first_slot(t: &FormTwist, b: &AbelianStructure, k: &[u64]) -> Option<usize> {
    let a = t.structure();
    let form = t.form();
    let ea = form.exponent();
    let eb = b.exponent();
    let l = lcm(ea, eb);
    let b_gens: Vec<(Vec<u64>, u64)> = (0..b.radix().rank())
        .map(|i| {
            let y = b.generators()[i];
            let coords = a.coords(y).expect("B inside A");
            let target = b.character(k).exp_at(&b.radix().unit(i)) * (l / eb) % l;
            (coords, target)
        })
        .collect();
    a.radix().iter().position(|x| b_gens.iter().all(|(y, target)| form.exp(&x, y) * (l / ea) % l == *target)).map(|i| a.elements()[i])
}

/// c(χ₁,χ₂,χ₃) = χ₃([x₁,x₂]) where αᵢ(xᵢ, ·) = χᵢ on B.
pub fn triform_c(t1: &FormTwist, t2: &FormTwist) -> Result<TriformInvariant> {
    let g = t1.group();
    let b = commutator_subgroup(t1, t2)?;
    if !b.elements().iter().all(|&x| t1.structure().contains(x) && t2.structure().contains(x)) {
        return Err(TwistError::Hypothesis("[A₁,A₂] is not contained in A₁ ∩ A₂".into()));
    }
    let n = b.order();
    let chars: Vec<Vec<u64>> = b.radix().iter().collect();
    let mut x1 = Vec::with_capacity(n);
    let mut x2 = Vec::with_capacity(n);
    for k in &chars {
        x1.push(solve_first_slot(t1, &b, k).ok_or_else(|| TwistError::SolveFailed(format!("no x₁ for character {k:?}")))?);
        x2.push(solve_first_slot(t2, &b, k).ok_or_else(|| TwistError::SolveFailed(format!("no x₂ for character {k:?}")))?);
    }
    let mut values = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let comm = b.coords(g.commutator(x1[i], x2[j])).expect("commutator lies in B");
            for k in &chars {
                values.push(b.character(k).exp_at(&comm));
            }
        }
    }
    Ok(TriformInvariant { base: b, values })
}

/// Σ_{χ,ψ} c(χ,χ,ψ)c(χ,ψ,ψ) p_ψ⊗p_χ.
pub fn commutator_formula_element(c: &TriformInvariant) -> TensorElement {
    let n = c.n();
    let e = c.exponent();
    let mut table = vec![Cyclotomic::zero(1); n * n];
    for chi in 0..n {
        for psi in 0..n {
            let ex = (c.at(chi, chi, psi) + c.at(chi, psi, psi)) % e;
            table[psi * n + chi] = Cyclotomic::root(e as u32, ex as i64);
        }
    }
    from_dual_table(&c.base, &table)
}

/// [F₁,F₂] equals the idempotent sum built from c.
pub fn commutator_formula_check(t1: &FormTwist, t2: &FormTwist, limits: &Limits) -> Result<bool> {
    let j = commutator_twist(t1, t2, limits)?;
    let c = triform_c(t1, t2)?;
    Ok(j == commutator_formula_element(&c))
}

/// Which way the pair identity for u is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrientation {
    /// u(χψ) = c(χ,χ,ψ)c(χ,ψ,ψ)u(χ)u(ψ).
    Displayed,
    /// u(χψ) = c(χ,χ,ψ)⁻¹c(χ,ψ,ψ)⁻¹u(χ)u(ψ), the form forced by (u⊗u)Δ(u)⁻¹ = [F₁,F₂].
    Coboundary,
}

/// u = Σ u(χ)p_χ ∈ k[B] with exponents of ζ_e.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedU {
    pub element: AlgebraElement,
    pub exponents: Vec<u64>,
}

fn cube_root_exponents(c: &TriformInvariant) -> Result<Vec<u64>> {
    let n = c.n();
    let e = c.exponent();
    if gcd(3, n as u64) != 1 {
        return Err(TwistError::Hypothesis(
            "|B| must not be divisible by 3 (the order is assumed prime to 2 and 3)".into(),
        ));
    }
    let inv3 = inverse_mod(3, e as i64).unwrap_or(0) as u64;
    Ok((0..n).map(|i| if e == 1 { 0 } else { c.at(i, i, i) * inv3 % e }).collect())
}

/// The unit whose coboundary is the commutator: u(χ)³ = c(χ,χ,χ)⁻¹.
pub fn solve_u(c: &TriformInvariant) -> Result<SolvedU> {
    let e = c.exponent();
    let exps: Vec<u64> = cube_root_exponents(c)?.into_iter().map(|k| (e - k) % e).collect();
    Ok(build_u(c, exps))
}

/// The element with u(χ) the canonical cube root of c(χ,χ,χ), read literally.
pub fn cube_root_u(c: &TriformInvariant) -> Result<SolvedU> {
    Ok(build_u(c, cube_root_exponents(c)?))
}

fn build_u(c: &TriformInvariant, exponents: Vec<u64>) -> SolvedU {
    let e = c.exponent() as u32;
    let values: Vec<Cyclotomic> = exponents.iter().map(|&k| Cyclotomic::root(e, k as i64)).collect();
    SolvedU { element: from_dual_values(&c.base, &values), exponents }
}

/// The pair identity for u on every pair of characters.
pub fn pair_identity_holds(c: &TriformInvariant, u: &SolvedU, orientation: PairOrientation) -> bool {
    let n = c.n();
    let e = c.exponent();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = c.char_mul(x, y);
            let cc = (c.at(x, x, y) + c.at(x, y, y)) % e;
            let cc = match orientation {
                PairOrientation::Displayed => cc,
                PairOrientation::Coboundary => (e - cc) % e,
            };
            u.exponents[xy] == (cc + u.exponents[x] + u.exponents[y]) % e
        })
    })
}

/// Postconditions of the u solve, each decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveUReport {
    pub pair_identity_displayed: bool,
    pub pair_identity_coboundary: bool,
    pub coboundary_matches_commutator: bool,
    pub invariant: bool,
}

pub fn check_u(u: &SolvedU, c: &TriformInvariant, commutator: &TensorElement, limits: &Limits) -> Result<SolveUReport> {
    let g = c.base.group();
    let cob = coboundary_of_unit(&u.element, limits)?;
    Ok(SolveUReport {
        pair_identity_displayed: pair_identity_holds(c, u, PairOrientation::Displayed),
        pair_identity_coboundary: pair_identity_holds(c, u, PairOrientation::Coboundary),
        coboundary_matches_commutator: cob == *commutator,
        invariant: g.generators().iter().all(|&x| u.element.conjugate_by(x) == u.element),
    })
}
