//! The twisted function algebra (k(A), *_F) and its identification with k[Â] twisted by b.

use rayon::prelude::*;
use twistlab_cyclo::Cyclotomic;

use crate::abelian::AbelianStructure;
use crate::form::PairingForm;
use crate::twist::{dual_table, FormTwist};
use crate::tensor::TensorElement;
use crate::{Result, TwistError};

#[derive(Debug, Clone, PartialEq)]
pub struct SkewReport {
    pub pairs_checked: usize,
    /// Character pairs (χ, ψ) where l_χ *_F l_ψ ≠ b(χ,ψ) l_χψ.
    pub failures: Vec<(Vec<u64>, Vec<u64>)>,
    /// The idempotent coefficients of F agree with the adjoint form of the presentation lemma;
    /// `None` when F was given directly.
    pub b_matches_idempotent_form: Option<bool>,
}

impl SkewReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.b_matches_idempotent_form != Some(false)
    }
}

/// The rule for F_(A,β) with β non-degenerate, plus agreement of b with the presentation lemma.
pub fn skew_group_algebra_iso_check(a: &AbelianStructure, beta: &PairingForm) -> Result<SkewReport> {
    if !beta.is_nondegenerate() {
        return Err(TwistError::Degenerate);
    }
    let twist = FormTwist::new(a.clone(), beta.clone())?;
    let mut report = skew_rule_check(a, twist.realized())?;
    let table = dual_table(twist.realized(), a)?;
    let idem = twist.idempotent_form()?;
    let coords: Vec<Vec<u64>> = a.radix().iter().collect();
    let n = a.order();
    report.b_matches_idempotent_form =
        Some((0..n * n).all(|pair| table[pair] == idem.value(&coords[pair / n], &coords[pair % n])));
    Ok(report)
}

/// Build (f *_F h)(x) = Σ F[a,b] f(xa) h(xb) from the structure constants of F and check
/// l_χ *_F l_ψ = b(χ,ψ) l_χψ for all pairs, with l_χ = Σ χ(a)δ_a and b(χ,ψ) = (χ⊗ψ)(F).
pub fn skew_rule_check(a: &AbelianStructure, f: &TensorElement) -> Result<SkewReport> {
    let radix = a.radix();
    let n = a.order();
    let e = a.exponent() as u32;
    let coords: Vec<Vec<u64>> = radix.iter().collect();
    let pos = |c: &[u64]| radix.index(c);
    // constants[x][u][v] = (δ_u *_F δ_v)(x) = F[x⁻¹u, x⁻¹v]
    let constants: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|x| {
            let xinv = radix.neg(&coords[x]);
            (0..n * n)
                .map(|uv| {
                    let s = pos(&radix.add(&xinv, &coords[uv / n]));
                    let t = pos(&radix.add(&xinv, &coords[uv % n]));
                    f.coeff(a.elements()[s], a.elements()[t])
                })
                .collect()
        })
        .collect();
    let l = |k: usize| -> Vec<Cyclotomic> {
        coords.iter().map(|c| Cyclotomic::root(e, radix.pairing_exp(&coords[k], c) as i64)).collect()
    };
    let ls: Vec<Vec<Cyclotomic>> = (0..n).map(l).collect();
    let table = dual_table(f, a)?;
    let failures: Vec<(Vec<u64>, Vec<u64>)> = (0..n * n)
        .into_par_iter()
        .filter_map(|pair| {
            let (chi, psi) = (pair / n, pair % n);
            let chipsi = pos(&radix.add(&coords[chi], &coords[psi]));
            let b = &table[chi * n + psi];
            let ok = (0..n).all(|x| {
                let mut acc = Cyclotomic::zero(1);
                for u in 0..n {
                    let fu = &ls[chi][u];
                    for v in 0..n {
                        let c = &constants[x][u * n + v];
                        if !c.is_zero() {
                            acc = &acc + &(&(fu * &ls[psi][v]) * c);
                        }
                    }
                }
                acc == b * &ls[chipsi][x]
            });
            (!ok).then(|| (coords[chi].clone(), coords[psi].clone()))
        })
        .collect();
    Ok(SkewReport { pairs_checked: n * n, failures, b_matches_idempotent_form: None })
}
