//! The affine symplectic group ASp(n,2) = Sp(n,2) ⋉ V* on the structured backend.

use std::sync::Arc;

use twistlab_core::{AbelianStructure, Limits, PairingForm, Radix};
use twistlab_groups::{FiniteGroup, GroupRule, MatrixRule, Subgroup};

use crate::{ConstructionError, Result};

/// Pairs (g, l) with g ∈ GL(n,2) row-major and l ∈ V* a row vector.
/// Product (g₁,l₁)(g₂,l₂) = (g₁g₂, l₁ + g₁·l₂) with g·l = l∘g⁻¹.
#[derive(Debug, Clone)]
pub struct AffineDualRule {
    pub n: usize,
    matrices: MatrixRule,
}

impl AffineDualRule {
    pub fn new(n: usize) -> AffineDualRule {
        AffineDualRule { n, matrices: MatrixRule { p: 2, dim: n } }
    }

    pub fn encode(&self, g: &[u8], l: &[u8]) -> Vec<u8> {
        [g, l].concat()
    }

    pub fn split<'a>(&self, a: &'a [u8]) -> (&'a [u8], &'a [u8]) {
        a.split_at(self.n * self.n)
    }

    /// Row vector times matrix over F₂.
    fn row_times(&self, l: &[u8], m: &[u8]) -> Vec<u8> {
        let n = self.n;
        (0..n).map(|j| (0..n).fold(0, |s, k| s ^ (l[k] & m[k * n + j]))).collect()
    }
}

impl GroupRule for AffineDualRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let (g1, l1) = self.split(a);
        let (g2, l2) = self.split(b);
        let g1inv = self.matrices.inverse(g1);
        let moved = self.row_times(l2, &g1inv);
        let l: Vec<u8> = l1.iter().zip(&moved).map(|(x, y)| x ^ y).collect();
        self.encode(&self.matrices.multiply(g1, g2), &l)
    }

    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        let (g, l) = self.split(a);
        self.encode(&self.matrices.inverse(g), &self.row_times(l, g))
    }

    fn identity(&self) -> Vec<u8> {
        self.encode(&self.matrices.identity(), &vec![0; self.n])
    }

    fn label(&self, a: &[u8]) -> String {
        let (g, l) = self.split(a);
        let l: String = l.iter().map(|v| v.to_string()).collect();
        format!("({}, l={l})", self.matrices.label(g))
    }
}

/// ω(u,v) = Σ uᵢv_{k+i} + u_{k+i}vᵢ on F₂ⁿ, n = 2k.
pub fn omega(u: &[u8], v: &[u8]) -> u8 {
    let k = u.len() / 2;
    (0..k).fold(0, |s, i| s ^ (u[i] & v[k + i]) ^ (u[k + i] & v[i]))
}

/// q(v) = Σ vᵢv_{k+i}, so that q(u+v) − q(u) − q(v) = ω(u,v).
pub fn q_standard(v: &[u8]) -> u8 {
    let k = v.len() / 2;
    (0..k).fold(0, |s, i| s ^ (v[i] & v[k + i]))
}

/// Vectors of F₂ⁿ in index order (first coordinate most significant).
pub fn vectors(n: usize) -> Vec<Vec<u8>> {
    (0..1usize << n).map(|i| (0..n).map(|j| ((i >> (n - 1 - j)) & 1) as u8).collect()).collect()
}

/// τ_v(u) = u + ω(v,u)v as a row-major matrix acting on column vectors.
pub fn transvection(v: &[u8]) -> Vec<u8> {
    let n = v.len();
    let k = n / 2;
    // ω(v,u) = (Jv)·u with J swapping the two halves
    let jv: Vec<u8> = (0..n).map(|i| if i < k { v[k + i] } else { v[i - k] }).collect();
    let mut m = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = ((i == j) as u8) ^ (v[i] & jv[j]);
        }
    }
    m
}

pub fn mat_vec(m: &[u8], v: &[u8]) -> Vec<u8> {
    let n = v.len();
    (0..n).map(|i| (0..n).fold(0, |s, j| s ^ (m[i * n + j] & v[j]))).collect()
}

/// ASp(n,2) with its normal subgroup V* and the form β = (−1)^m on V̂ ≅ V.
#[derive(Debug, Clone)]
pub struct AffineSymplectic {
    pub n: usize,
    pub rule: Arc<AffineDualRule>,
    pub group: Arc<FiniteGroup>,
    /// V* with basis the coordinate functionals eᵢ*, so character k is v = k.
    pub dual: AbelianStructure,
    /// m(x,y) = xᵀMy with M − Mᵀ the Gram matrix of ω.
    pub m: Vec<Vec<u8>>,
    pub beta: PairingForm,
    /// Indices of the transvections (τ_v, 0), in the order of [`vectors`].
    pub transvections: Vec<usize>,
}

/// Largest n accepted by [`asp`].
pub const ASP_MAX_N: usize = 4;

pub fn asp(n: usize, limits: &Limits) -> Result<AffineSymplectic> {
    if n == 0 || n % 2 == 1 {
        return Err(ConstructionError::InvalidParameter(format!("n must be even and positive, got {n}")));
    }
    if n > ASP_MAX_N {
        return Err(ConstructionError::InvalidParameter(format!("n = {n} exceeds the order cap (n ≤ {ASP_MAX_N})")));
    }
    let rule = Arc::new(AffineDualRule::new(n));
    let zero = vec![0u8; n];
    let id = MatrixRule { p: 2, dim: n }.identity();
    let nonzero: Vec<Vec<u8>> = vectors(n).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let tv_enc: Vec<Vec<u8>> = nonzero.iter().map(|v| rule.encode(&transvection(v), &zero)).collect();
    let shift_enc: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut l = zero.clone();
            l[i] = 1;
            rule.encode(&id, &l)
        })
        .collect();
    let gens: Vec<Vec<u8>> = tv_enc.iter().chain(&shift_enc).cloned().collect();
    let g = FiniteGroup::closure(&format!("ASp({n},2)"), rule.clone(), &gens, limits.closure_cap, limits.table_cap)?;
    let g = Arc::new(g);
    let idx = |e: &[u8]| g.index_of(e).expect("generator is in the closure");
    let transvections: Vec<usize> = tv_enc.iter().map(|e| idx(e)).collect();
    let shifts: Vec<usize> = shift_enc.iter().map(|e| idx(e)).collect();
    let dual = AbelianStructure::with_generators(&Subgroup::generated(&g, &shifts), &shifts)?;
    let k = n / 2;
    let m: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| ((i == j) || (i < k && j == k + i)) as u8).collect()).collect();
    let matrix: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let beta = PairingForm::new(Radix::new(vec![2; n]), matrix)?;
    Ok(AffineSymplectic { n, rule, group: g, dual, m, beta, transvections })
}

impl AffineSymplectic {
    /// The linear part of a group element.
    pub fn linear_part(&self, g: usize) -> Vec<u8> {
        let enc = self.group.encoding(g).expect("structured group");
        self.rule.split(enc).0.to_vec()
    }

    /// The V* part of a group element.
    pub fn dual_part(&self, g: usize) -> Vec<u8> {
        let enc = self.group.encoding(g).expect("structured group");
        self.rule.split(enc).1.to_vec()
    }

    /// m(x,y) over F₂.
    pub fn m_value(&self, x: &[u8], y: &[u8]) -> u8 {
        let n = self.n;
        (0..n).fold(0, |s, i| (0..n).fold(s, |s, j| s ^ (x[i] & self.m[i][j] & y[j])))
    }

    /// m(x,y) − m(y,x) = ω(x,y) on all pairs.
    pub fn m_alternates_to_omega(&self) -> bool {
        let vs = vectors(self.n);
        vs.iter().all(|x| vs.iter().all(|y| self.m_value(x, y) ^ self.m_value(y, x) == omega(x, y)))
    }

    /// The alternation of β is preserved by the action of G on V̂.
    pub fn beta_alternation_invariant(&self) -> Result<bool> {
        let alt = self.beta.alternation();
        let actions: Vec<Vec<Vec<u64>>> =
            self.group.generators().iter().map(|&g| self.dual.dual_action(g)).collect::<std::result::Result<_, _>>()?;
        Ok(alt.is_invariant(&actions))
    }
}
