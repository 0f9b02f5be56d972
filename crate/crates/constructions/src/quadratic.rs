//! The quadratic example on ASp(n,2): x = Σ(−1)^{q(v)}p_v and its cocycle ψ with values in V*.

use twistlab_core::twist::from_dual_values;
use twistlab_core::{AlgebraElement, Limits};
use twistlab_cyclo::Cyclotomic;

use crate::asp::{asp, mat_vec, omega, q_standard, transvection, vectors, AffineSymplectic};
use crate::ffield::solve_mod_p;
use crate::Result;

/// A quadratic form q on F₂ⁿ with polarization b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticData {
    pub dim: usize,
    /// Gram matrix of b.
    pub b: Vec<Vec<u8>>,
    /// q(v) by vector index (see [`vectors`]).
    pub q: Vec<u8>,
}

impl QuadraticData {
    pub fn standard(n: usize) -> QuadraticData {
        let vs = vectors(n);
        let unit = |i: usize| -> Vec<u8> { (0..n).map(|j| (i == j) as u8).collect() };
        let b = (0..n).map(|i| (0..n).map(|j| omega(&unit(i), &unit(j))).collect()).collect();
        QuadraticData { dim: n, b, q: vs.iter().map(|v| q_standard(v)).collect() }
    }

    pub fn b_value(&self, u: &[u8], v: &[u8]) -> u8 {
        let n = self.dim;
        (0..n).fold(0, |s, i| (0..n).fold(s, |s, j| s ^ (u[i] & self.b[i][j] & v[j])))
    }

    fn index(v: &[u8]) -> usize {
        v.iter().fold(0, |acc, &x| acc * 2 + x as usize)
    }

    pub fn q_value(&self, v: &[u8]) -> u8 {
        self.q[Self::index(v)]
    }

    /// b alternating and q(u+v) − q(u) − q(v) = b(u,v), exhaustively.
    pub fn is_valid(&self) -> bool {
        let vs = vectors(self.dim);
        let alternating = vs.iter().all(|v| self.b_value(v, v) == 0);
        let polar = vs.iter().all(|u| {
            vs.iter().all(|v| {
                let s: Vec<u8> = u.iter().zip(v).map(|(a, b)| a ^ b).collect();
                self.q_value(&s) ^ self.q_value(u) ^ self.q_value(v) == self.b_value(u, v)
            })
        });
        alternating && polar
    }
}

#[derive(Debug, Clone)]
pub struct QuadraticExample {
    pub asp: AffineSymplectic,
    pub data: QuadraticData,
    /// Σ (−1)^{q(v)} p_v ∈ k[V*].
    pub x: AlgebraElement,
    /// ψ(g) ∈ V* for every g, as a row vector.
    pub psi: Vec<Vec<u8>>,
    pub coboundary_feasible: bool,
}

pub fn quadratic_example(n: usize, limits: &Limits) -> Result<QuadraticExample> {
    let asp = asp(n, limits)?;
    let data = QuadraticData::standard(n);
    let values: Vec<Cyclotomic> =
        vectors(n).iter().map(|v| Cyclotomic::from_i64(1, if data.q_value(v) == 1 { -1 } else { 1 })).collect();
    let x = from_dual_values(&asp.dual, &values);
    let psi: Vec<Vec<u8>> = (0..asp.group.order()).map(|g| psi_of_linear(&data, &asp.linear_part(g), n)).collect();
    let coboundary_feasible = coboundary_solution(&asp, &data).is_some();
    Ok(QuadraticExample { asp, data, x, psi, coboundary_feasible })
}

fn invert_f2(h: &[u8], n: usize) -> Vec<u8> {
    use twistlab_groups::GroupRule;
    twistlab_groups::MatrixRule { p: 2, dim: n }.inverse(h)
}

/// ψ(g)(w) = q(w) − q(h⁻¹w) for g with linear part h.
fn psi_of_linear(data: &QuadraticData, h: &[u8], n: usize) -> Vec<u8> {
    let hinv = invert_f2(h, n);
    (0..n)
        .map(|j| {
            let e: Vec<u8> = (0..n).map(|i| (i == j) as u8).collect();
            data.q_value(&e) ^ data.q_value(&mat_vec(&hinv, &e))
        })
        .collect()
}

/// Some l ∈ V* with l(w) − l(τ⁻¹w) = ψ(τ)(w) for every transvection τ, if one exists.
pub fn coboundary_solution(asp: &AffineSymplectic, data: &QuadraticData) -> Option<Vec<u8>> {
    let n = asp.n;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for &t in &asp.transvections {
        let h = asp.linear_part(t);
        let hinv = invert_f2(&h, n);
        let psi = psi_of_linear(data, &h, n);
        for j in 0..n {
            rows.push((0..n).map(|i| ((i == j) as u8 ^ hinv[i * n + j]) as u32).collect());
            rhs.push(psi[j] as u32);
        }
    }
    solve_mod_p(&rows, &rhs, 2).map(|l| l.into_iter().map(|v| v as u8).collect())
}

impl QuadraticExample {
    /// ψ(g)(w) evaluated from the stored row vector.
    pub fn psi_at(&self, g: usize, w: &[u8]) -> u8 {
        self.psi[g].iter().zip(w).fold(0, |s, (a, b)| s ^ (a & b))
    }

    /// The element (1, ψ(g)) of V* ⊂ G.
    pub fn psi_element(&self, g: usize) -> usize {
        let id = twistlab_groups::MatrixRule { p: 2, dim: self.asp.n };
        let enc = self.asp.rule.encode(&twistlab_groups::GroupRule::identity(&id), &self.psi[g]);
        self.asp.group.index_of(&enc).expect("V* lies in G")
    }

    /// x g x⁻¹ g⁻¹ equals (1, ψ(g)) for each listed g.
    pub fn commutator_realizes_psi(&self, elements: &[usize], limits: &Limits) -> Result<bool> {
        let g = &self.asp.group;
        let xinv = self.x.inverse_with(limits)?;
        Ok(elements.iter().all(|&h| {
            let comm = self.x.mul(&AlgebraElement::basis(g, h)).mul(&xinv).mul(&AlgebraElement::basis(g, g.inv(h)));
            comm == AlgebraElement::basis(g, self.psi_element(h))
        }))
    }

    /// q(τ_{(u,l)}(v,m)) − q(v,m) = (m(u) + l(v))(l(u) + 1) for all (u,l) and (v,m),
    /// with both sides compared against ψ(τ).
    pub fn transvection_formula_holds(&self) -> bool {
        let n = self.asp.n;
        let k = n / 2;
        let vs = vectors(n);
        let dot = |a: &[u8], b: &[u8]| a.iter().zip(b).fold(0u8, |s, (x, y)| s ^ (x & y));
        vs.iter().filter(|ul| ul.iter().any(|&c| c != 0)).all(|ul| {
            let tau = transvection(ul);
            let psi = psi_of_linear(&self.data, &tau, n);
            let (u, l) = ul.split_at(k);
            vs.iter().all(|vm| {
                let (v, m) = vm.split_at(k);
                let formula = (dot(m, u) ^ dot(l, v)) & (dot(l, u) ^ 1);
                let direct = self.data.q_value(&mat_vec(&tau, vm)) ^ self.data.q_value(vm);
                let from_psi = psi.iter().zip(vm.iter()).fold(0u8, |s, (a, b)| s ^ (a & b));
                formula == direct && formula == from_psi
            })
        })
    }
}
