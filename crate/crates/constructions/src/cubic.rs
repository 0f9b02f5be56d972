//! The cubic example over F_{3⁵}: τ(x,y,z) = Tr(xyz⁹ + xy⁹z + x⁹yz),
//! c(x) = Tr(x¹¹), and the generators r, s, t of Aut(V,τ).

use std::sync::Arc;

use twistlab_core::Limits;
use twistlab_groups::{FiniteGroup, GroupRule, MatrixRule};

use crate::ffield::{rank_mod_p, solve_mod_p, FiniteField, FiniteFieldElement};
use crate::{ConstructionError, Result};

/// Exponents k with ε^k forming the basis used for r.
pub const EPSILON_BASIS: [u64; 5] = [1, 3, 4, 5, 9];
/// r(ε^k) = −ε^{R_TARGET[i]} for k = EPSILON_BASIS[i].
const R_TARGET: [u64; 5] = [1, 9, 5, 3, 4];

/// τ and c on V = F_{3⁵} as value tables.
#[derive(Debug, Clone)]
pub struct CubicData {
    pub field: FiniteField,
    /// τ on power-basis triples, indexed (i·5 + j)·5 + k.
    pub tau_basis: Vec<u32>,
    /// c(v) by element index.
    pub c: Vec<u32>,
}

impl CubicData {
    pub fn new(field: FiniteField) -> CubicData {
        let d = field.degree();
        let basis: Vec<FiniteFieldElement> = (0..d).map(|i| field.basis(i)).collect();
        let mut tau_basis = Vec::with_capacity(d * d * d);
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    tau_basis.push(tau(&field, x, y, z));
                }
            }
        }
        let c = field.elements().map(|v| c_value(&field, &v)).collect();
        CubicData { field, tau_basis, c }
    }

    /// τ by trilinear expansion of the basis table.
    pub fn tau_linear(&self, x: &[u32], y: &[u32], z: &[u32]) -> u32 {
        let d = self.field.degree();
        let p = self.field.characteristic();
        let mut s = 0u32;
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                for k in 0..d {
                    s = (s + x[i] * y[j] % p * z[k] % p * self.tau_basis[(i * d + j) * d + k]) % p;
                }
            }
        }
        s
    }

    /// τ symmetric, τ(v,v,v) = 0, and c(u+v) − c(u) − c(v) = τ(u,u,v) + τ(u,v,v), all exhaustively.
    pub fn is_valid(&self) -> bool {
        let f = &self.field;
        let d = f.degree();
        let p = f.characteristic();
        let at = |i: usize, j: usize, k: usize| self.tau_basis[(i * d + j) * d + k];
        let symmetric = (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| at(i, j, k) == at(j, i, k) && at(i, j, k) == at(i, k, j))));
        let elems: Vec<FiniteFieldElement> = f.elements().collect();
        let diagonal = elems.iter().all(|v| self.tau_linear(&v.coeffs, &v.coeffs, &v.coeffs) == 0);
        let polar = elems.iter().all(|u| {
            elems.iter().all(|v| {
                let lhs = (self.c[f.index(&f.add(u, v))] + 2 * p - self.c[f.index(u)] - self.c[f.index(v)]) % p;
                let rhs = (self.tau_linear(&u.coeffs, &u.coeffs, &v.coeffs) + self.tau_linear(&u.coeffs, &v.coeffs, &v.coeffs)) % p;
                lhs == rhs
            })
        });
        symmetric && diagonal && polar
    }
}

pub fn tau(f: &FiniteField, x: &FiniteFieldElement, y: &FiniteFieldElement, z: &FiniteFieldElement) -> u32 {
    let (x9, y9, z9) = (f.pow(x, 9), f.pow(y, 9), f.pow(z, 9));
    let a = f.mul(&f.mul(x, y), &z9);
    let b = f.mul(&f.mul(x, &y9), z);
    let c = f.mul(&f.mul(&x9, y), z);
    f.trace(&f.add(&f.add(&a, &b), &c))
}

pub fn c_value(f: &FiniteField, x: &FiniteFieldElement) -> u32 {
    f.trace(&f.pow(x, 11))
}

#[derive(Debug, Clone)]
pub struct CubicExample {
    pub data: CubicData,
    pub epsilon: FiniteFieldElement,
    /// Rank over F₃ of ε, ε³, ε⁴, ε⁵, ε⁹.
    pub basis_rank: usize,
    /// Row-major 5×5 matrices over F₃ acting on power-basis coordinates (columns are images).
    pub r: Vec<u8>,
    pub s: Vec<u8>,
    pub t: Vec<u8>,
    /// r, s, t preserve τ on all basis triples.
    pub tau_preserved: [bool; 3],
    pub closure_order: usize,
    pub stabilizer_closure_order: usize,
    /// r², s, t each fix c on all 243 points.
    pub c_stabilized: [bool; 3],
    /// λ with Tr(λεv) = Tr(λv) for all v.
    pub s_invariant_lambdas: Vec<FiniteFieldElement>,
    /// Some v with c(v) ≠ c(r v).
    pub witness: Option<FiniteFieldElement>,
    /// Whether c(v) − c(gv) = l(v) − l(gv) has a solution l for g ∈ {r, s, t}.
    pub coboundary_feasible: bool,
}

fn matrix_rule() -> MatrixRule {
    MatrixRule { p: 3, dim: 5 }
}

fn apply(m: &[u8], v: &[u32]) -> Vec<u32> {
    let d = v.len();
    (0..d).map(|i| (0..d).map(|j| m[i * d + j] as u32 * v[j]).sum::<u32>() % 3).collect()
}

fn from_columns(cols: &[Vec<u32>]) -> Vec<u8> {
    let d = cols.len();
    let mut m = vec![0u8; d * d];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            m[i * d + j] = col[i] as u8;
        }
    }
    m
}

pub fn f243_cubic_example(limits: &Limits) -> Result<CubicExample> {
    let field = FiniteField::new(3, 5)?;
    let data = CubicData::new(field.clone());
    let f = &data.field;
    let epsilon = f
        .elements()
        .find(|e| !e.is_zero() && f.multiplicative_order(e) == 11 && f.trace(e) == 2)
        .ok_or_else(|| ConstructionError::Search("no element of order 11 with trace −1".into()))?;
    let powers: Vec<FiniteFieldElement> = EPSILON_BASIS.iter().map(|&k| f.pow(&epsilon, k)).collect();
    let cols: Vec<Vec<u32>> = powers.iter().map(|x| x.coeffs.clone()).collect();
    let basis_rank = rank_mod_p(&cols, 3);
    if basis_rank != 5 {
        return Err(ConstructionError::Search(format!("powers of ε span only rank {basis_rank}")));
    }
    let rule = matrix_rule();
    let d = 5;
    let s = from_columns(&(0..d).map(|j| f.mul(&epsilon, &f.basis(j)).coeffs).collect::<Vec<_>>());
    let t = from_columns(&(0..d).map(|j| f.pow(&f.basis(j), 3).coeffs).collect::<Vec<_>>());
    let b = from_columns(&cols);
    let targets: Vec<Vec<u32>> =
        R_TARGET.iter().map(|&k| f.neg(&f.pow(&epsilon, k)).coeffs).collect();
    let r_eps = from_columns(&targets);
    // r = (images of the ε-basis) ∘ (coordinates in the ε-basis)
    let r = rule.multiply(&r_eps, &rule.inverse(&b));
    let preserves = |m: &[u8]| -> bool {
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (x, y, z) = (f.basis(i).coeffs, f.basis(j).coeffs, f.basis(k).coeffs);
                    data.tau_linear(&apply(m, &x), &apply(m, &y), &apply(m, &z)) == data.tau_linear(&x, &y, &z)
                })
            })
        })
    };
    let tau_preserved = [preserves(&r), preserves(&s), preserves(&t)];
    let m11 = FiniteGroup::closure("Aut(V,τ)", Arc::new(rule.clone()), &[r.clone(), s.clone(), t.clone()], limits.closure_cap, limits.table_cap)?;
    let r2 = rule.multiply(&r, &r);
    let psl = FiniteGroup::closure("Stab(c)", Arc::new(rule.clone()), &[r2.clone(), s.clone(), t.clone()], limits.closure_cap, limits.table_cap)?;
    let elems: Vec<FiniteFieldElement> = f.elements().collect();
    let fixes_c = |m: &[u8]| elems.iter().all(|v| data.c[f.index(&FiniteFieldElement { coeffs: apply(m, &v.coeffs) })] == data.c[f.index(v)]);
    let c_stabilized = [fixes_c(&r2), fixes_c(&s), fixes_c(&t)];
    let s_invariant_lambdas: Vec<FiniteFieldElement> = elems
        .iter()
        .filter(|lam| {
            let le = f.mul(lam, &epsilon);
            (0..d).all(|j| f.trace(&f.mul(&le, &f.basis(j))) == f.trace(&f.mul(lam, &f.basis(j))))
        })
        .cloned()
        .collect();
    let witness = elems
        .iter()
        .find(|v| data.c[f.index(&FiniteFieldElement { coeffs: apply(&r, &v.coeffs) })] != data.c[f.index(v)])
        .cloned();
    let coboundary_feasible = coboundary_system(&data, &[&r, &s, &t]).is_some();
    Ok(CubicExample {
        data,
        epsilon,
        basis_rank,
        r,
        s,
        t,
        tau_preserved,
        closure_order: m11.order(),
        stabilizer_closure_order: psl.order(),
        c_stabilized,
        s_invariant_lambdas,
        witness,
        coboundary_feasible,
    })
}

/// l ∈ V* (coordinates on the power basis) with c(v) − c(gv) = l(v) − l(gv) for all v and listed g.
pub fn coboundary_system(data: &CubicData, gens: &[&[u8]]) -> Option<Vec<u32>> {
    let f = &data.field;
    let d = f.degree();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in gens {
        for v in f.elements() {
            let gv = apply(g, &v.coeffs);
            rows.push((0..d).map(|i| (v.coeffs[i] + 3 - gv[i]) % 3).collect());
            let cg = data.c[f.index(&FiniteFieldElement { coeffs: gv })];
            rhs.push((data.c[f.index(&v)] + 3 - cg) % 3);
        }
    }
    solve_mod_p(&rows, &rhs, 3)
}
