//! M(C,c) on C⊕C⊕Ĉ with (x₁,y₁,χ₁)(x₂,y₂,χ₂) = (x₁+x₂, y₁+y₂, χ₁χ₂c(x₁,y₂,−)),
//! optionally extended by a group Q of automorphisms of C preserving c.

use std::sync::Arc;

use twistlab_core::abelian::{apply_action, dual_of_action};
use twistlab_core::commutator::TriformInvariant;
use twistlab_core::{AbelianStructure, FormTwist, Limits, PairingForm, Radix};
use twistlab_groups::{FiniteGroup, GroupRule, Subgroup};

use crate::{ConstructionError, Result};

/// The abelian group Z/d₁ × … × Z/d_r with its coordinate basis.
pub fn abelian_structure(divisors: &[u64], limits: &Limits) -> Result<AbelianStructure> {
    let g = Arc::new(FiniteGroup::abelian(divisors, limits.table_cap));
    let radix = Radix::new(divisors.to_vec());
    let gens: Vec<usize> = (0..divisors.len()).filter(|&i| divisors[i] > 1).map(|i| radix.index(&radix.unit(i))).collect();
    if gens.len() != divisors.len() {
        return Err(ConstructionError::InvalidParameter("divisors must exceed 1".into()));
    }
    Ok(AbelianStructure::with_generators(&Subgroup::whole(&g), &gens)?)
}

/// c as a table of exponents of ζ_e on C×C×C, e = exp(C).
pub fn triform_from_fn(c: &AbelianStructure, f: impl Fn(&[u64], &[u64], &[u64]) -> u64) -> TriformInvariant {
    let radix = c.radix();
    let e = radix.exponent();
    let mut values = Vec::with_capacity(radix.size().pow(3));
    for x in radix.iter() {
        for y in radix.iter() {
            for z in radix.iter() {
                values.push(f(&x, &y, &z) % e);
            }
        }
    }
    TriformInvariant { base: c.clone(), values }
}

/// Automorphism of C given by images of the basis.
type Action = Vec<Vec<u64>>;

#[derive(Debug)]
pub struct MccRule {
    radix: Radix,
    /// cchar[x][y] = coordinates of the character c(x,y,−).
    cchar: Vec<Vec<Vec<u64>>>,
    with_q: bool,
}

impl MccRule {
    fn r(&self) -> usize {
        self.radix.rank()
    }

    pub fn encode(&self, q: Option<&Action>, x: &[u64], y: &[u64], chi: &[u64]) -> Vec<u8> {
        let mut out = Vec::new();
        if self.with_q {
            let id;
            let q = match q {
                Some(q) => q,
                None => {
                    id = identity_action(self.r());
                    &id
                }
            };
            out.extend(q.iter().flatten().map(|&v| v as u8));
        }
        out.extend(x.iter().chain(y).chain(chi).map(|&v| v as u8));
        out
    }

    /// (q, x, y, χ); q is the identity when there is no Q.
    pub fn decode(&self, a: &[u8]) -> (Action, Vec<u64>, Vec<u64>, Vec<u64>) {
        let r = self.r();
        let (q, rest) = if self.with_q {
            let q: Action = (0..r).map(|i| a[i * r..(i + 1) * r].iter().map(|&v| v as u64).collect()).collect();
            (q, &a[r * r..])
        } else {
            (identity_action(r), a)
        };
        let v: Vec<u64> = rest.iter().map(|&b| b as u64).collect();
        (q, v[..r].to_vec(), v[r..2 * r].to_vec(), v[2 * r..].to_vec())
    }

    fn compose(&self, q1: &Action, q2: &Action) -> Action {
        q2.iter().map(|img| apply_action(&self.radix, q1, img)).collect()
    }

    fn invert(&self, q: &Action) -> Action {
        let id = identity_action(self.r());
        let mut prev = id.clone();
        let mut cur = q.clone();
        while cur != id {
            prev = cur.clone();
            cur = self.compose(&cur, q);
        }
        prev
    }

    /// q·(x, y, χ) = (qx, qy, χ∘q⁻¹).
    fn act(&self, q: &Action, x: &[u64], y: &[u64], chi: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let dual = dual_of_action(&self.radix, &self.invert(q));
        (apply_action(&self.radix, q, x), apply_action(&self.radix, q, y), apply_action(&self.radix, &dual, chi))
    }
}

fn identity_action(r: usize) -> Action {
    (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect()
}

impl GroupRule for MccRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let (q1, x1, y1, c1) = self.decode(a);
        let (q2, x2, y2, c2) = self.decode(b);
        let (x2, y2, c2) = self.act(&q1, &x2, &y2, &c2);
        let rad = &self.radix;
        let twist = &self.cchar[rad.index(&x1)][rad.index(&y2)];
        let chi = rad.add(&rad.add(&c1, &c2), twist);
        self.encode(Some(&self.compose(&q1, &q2)), &rad.add(&x1, &x2), &rad.add(&y1, &y2), &chi)
    }

    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        let (q, x, y, chi) = self.decode(a);
        let qinv = self.invert(&q);
        let rad = &self.radix;
        // (x,y,χ)⁻¹ = (−x, −y, χ⁻¹ c(x,y,−))
        let (nx, ny) = (rad.neg(&x), rad.neg(&y));
        let nchi = rad.add(&rad.neg(&chi), &self.cchar[rad.index(&x)][rad.index(&y)]);
        let (ix, iy, ichi) = self.act(&qinv, &nx, &ny, &nchi);
        self.encode(Some(&qinv), &ix, &iy, &ichi)
    }

    fn identity(&self) -> Vec<u8> {
        let z = vec![0; self.r()];
        self.encode(None, &z, &z, &z)
    }

    fn label(&self, a: &[u8]) -> String {
        let (q, x, y, chi) = self.decode(a);
        if self.with_q {
            format!("(x={x:?}, y={y:?}, χ={chi:?}, q={q:?})")
        } else {
            format!("(x={x:?}, y={y:?}, χ={chi:?})")
        }
    }
}

#[derive(Debug, Clone)]
pub struct MccGroup {
    pub group: Arc<FiniteGroup>,
    pub rule: Arc<MccRule>,
    /// C⊕0⊕Ĉ and 0⊕C⊕Ĉ with the standard alternating forms χ'(x)χ(x')⁻¹.
    pub t1: FormTwist,
    pub t2: FormTwist,
    /// 0⊕0⊕Ĉ.
    pub center_part: AbelianStructure,
}

pub fn mcc_group(c: &TriformInvariant, q: Option<&[Action]>, limits: &Limits) -> Result<MccGroup> {
    if !c.is_symmetric() {
        return Err(ConstructionError::InvalidParameter("c is not symmetric".into()));
    }
    if !c.is_trimultiplicative() {
        return Err(ConstructionError::InvalidParameter("c is not tri-multiplicative".into()));
    }
    let radix = c.base.radix().clone();
    let r = radix.rank();
    let n = radix.size();
    let e = radix.exponent();
    if radix.divisors().iter().any(|&d| d > 255) {
        return Err(ConstructionError::InvalidParameter("cyclic factors must be below 256".into()));
    }
    if n.saturating_mul(n).saturating_mul(n) > limits.closure_cap {
        return Err(ConstructionError::InvalidParameter(format!("|C|³ = {} exceeds the closure cap {}", n * n * n, limits.closure_cap)));
    }
    let units: Vec<usize> = (0..r).map(|i| radix.index(&radix.unit(i))).collect();
    let cchar: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..r)
                        .map(|i| {
                            let d = radix.divisors()[i];
                            c.at(x, y, units[i]) / (e / d) % d
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    if let Some(qs) = q {
        for qa in qs {
            let preserved = (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        let img = |i: usize| radix.index(&apply_action(&radix, qa, &radix.coords(i)));
                        c.at(img(x), img(y), img(z)) == c.at(x, y, z)
                    })
                })
            });
            if !preserved {
                return Err(ConstructionError::InvalidParameter("Q does not preserve c".into()));
            }
        }
    }
    let with_q = q.is_some_and(|qs| !qs.is_empty());
    let rule = Arc::new(MccRule { radix: radix.clone(), cchar, with_q });
    let z = vec![0u64; r];
    let mut gens = Vec::new();
    for i in 0..r {
        let u = radix.unit(i);
        gens.push(rule.encode(None, &u, &z, &z));
        gens.push(rule.encode(None, &z, &u, &z));
        gens.push(rule.encode(None, &z, &z, &u));
    }
    if let Some(qs) = q {
        for qa in qs {
            gens.push(rule.encode(Some(qa), &z, &z, &z));
        }
    }
    let name = if with_q { "M(C,c)⋊Q" } else { "M(C,c)" };
    let g = Arc::new(FiniteGroup::closure(name, rule.clone(), &gens, limits.closure_cap, limits.table_cap)?);
    let idx = |enc: Vec<u8>| g.index_of(&enc).expect("generator is in the closure");
    let xs: Vec<usize> = (0..r).map(|i| idx(rule.encode(None, &radix.unit(i), &z, &z))).collect();
    let ys: Vec<usize> = (0..r).map(|i| idx(rule.encode(None, &z, &radix.unit(i), &z))).collect();
    let chis: Vec<usize> = (0..r).map(|i| idx(rule.encode(None, &z, &z, &radix.unit(i)))).collect();
    let std_form = |a: &AbelianStructure| -> Result<PairingForm> {
        let mut m = vec![vec![0i64; 2 * r]; 2 * r];
        for i in 0..r {
            let v = (e / radix.divisors()[i]) as i64;
            m[i][r + i] = v;
            m[r + i][i] = -v;
        }
        Ok(PairingForm::new(a.radix().clone(), m)?)
    };
    let make = |first: &[usize]| -> Result<FormTwist> {
        let gens: Vec<usize> = first.iter().chain(&chis).copied().collect();
        let a = AbelianStructure::with_generators(&Subgroup::generated(&g, &gens), &gens)?;
        let form = std_form(&a)?;
        Ok(FormTwist::new(a, form)?)
    };
    let t1 = make(&xs)?;
    let t2 = make(&ys)?;
    let center_part = AbelianStructure::with_generators(&Subgroup::generated(&g, &chis), &chis)?;
    Ok(MccGroup { group: g, rule, t1, t2, center_part })
}
