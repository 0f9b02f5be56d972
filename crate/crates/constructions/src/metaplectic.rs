//! The metaplectic lift overline G = tilde G / K of a group G with a normal
//! abelian subgroup A and a form β on Â.
//!
//! tilde G consists of pairs (g, c) with c: Â → μ_M satisfying
//! c(χξ) = β_g(χ,ξ)c(χ)c(ξ), β_g(χ,ξ) = β(gχ,gξ)/β(χ,ξ), and product
//! (g₁,c₁)(g₂,c₂) = (g₁g₂, ψ ↦ c₁(g₂·ψ)c₂(ψ)). K = {(a, c_a⁻¹)} with c_a(χ) = χ(a).

use std::sync::Arc;

use twistlab_core::abelian::apply_action;
use twistlab_core::cocycle::{trivialize_symmetric_cocycle, CochainTable};
use twistlab_core::twist::{from_dual_table, from_dual_values};
use twistlab_core::twisted_hom::TwistedHomomorphism;
use twistlab_core::{AbelianStructure, AlgebraElement, Limits, PairingForm};
use twistlab_cyclo::{lcm, Cyclotomic};
use twistlab_groups::{FiniteGroup, GroupRule};

use crate::{ConstructionError, Result};

/// Multiplication in tilde G on encodings (2-byte index of g, then c as exponents mod M).
#[derive(Debug)]
pub struct TildeRule {
    base: Arc<FiniteGroup>,
    /// act[g][ψ] = index of g·ψ.
    act: Vec<Vec<u16>>,
    modulus: u64,
}

impl TildeRule {
    pub fn encode(&self, g: usize, c: &[u64]) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + c.len());
        out.extend_from_slice(&(g as u16).to_be_bytes());
        out.extend(c.iter().map(|&v| (v % self.modulus) as u8));
        out
    }

    pub fn decode(&self, a: &[u8]) -> (usize, Vec<u64>) {
        let g = u16::from_be_bytes([a[0], a[1]]) as usize;
        (g, a[2..].iter().map(|&v| v as u64).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl GroupRule for TildeRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let (g1, c1) = self.decode(a);
        let (g2, c2) = self.decode(b);
        let m = self.modulus;
        let c: Vec<u64> = (0..c2.len()).map(|psi| (c1[self.act[g2][psi] as usize] + c2[psi]) % m).collect();
        self.encode(self.base.mul(g1, g2), &c)
    }

    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        let (g, c) = self.decode(a);
        let ginv = self.base.inv(g);
        let m = self.modulus;
        let out: Vec<u64> = (0..c.len()).map(|psi| (m - c[self.act[ginv][psi] as usize]) % m).collect();
        self.encode(ginv, &out)
    }

    fn identity(&self) -> Vec<u8> {
        self.encode(self.base.identity(), &vec![0; self.act[0].len()])
    }

    fn label(&self, a: &[u8]) -> String {
        let (g, c) = self.decode(a);
        format!("({}, c={c:?} mod {})", self.base.label(g), self.modulus)
    }
}

/// tilde G modulo K, with the coset representative of least encoding.
#[derive(Debug)]
pub struct QuotientRule {
    pub tilde: TildeRule,
    /// For each g: the least g·a over a ∈ A, and the position of that a in A.
    coset_min: Vec<(usize, usize)>,
    /// c_a as exponents mod M, indexed by position of a in A.
    char_of: Vec<Vec<u64>>,
}

impl QuotientRule {
    pub fn canonical(&self, g: usize, c: &[u64]) -> Vec<u8> {
        let (h, pos) = self.coset_min[g];
        let m = self.tilde.modulus;
        let out: Vec<u64> = c.iter().zip(&self.char_of[pos]).map(|(&x, &y)| (x + m - y) % m).collect();
        self.tilde.encode(h, &out)
    }

    fn canonicalize(&self, enc: &[u8]) -> Vec<u8> {
        let (g, c) = self.tilde.decode(enc);
        self.canonical(g, &c)
    }
}

impl GroupRule for QuotientRule {
    fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        self.canonicalize(&self.tilde.multiply(a, b))
    }

    fn inverse(&self, a: &[u8]) -> Vec<u8> {
        self.canonicalize(&self.tilde.inverse(a))
    }

    fn identity(&self) -> Vec<u8> {
        self.canonicalize(&self.tilde.identity())
    }

    fn label(&self, a: &[u8]) -> String {
        self.tilde.label(a)
    }
}

#[derive(Debug, Clone)]
pub struct MetaplecticLift {
    pub base: Arc<FiniteGroup>,
    pub a: AbelianStructure,
    pub beta: PairingForm,
    /// Working modulus M of the values c(χ).
    pub modulus: u64,
    /// A particular solution c_g for every g ∈ G, exponents mod M by character index.
    pub solutions: Vec<Vec<u64>>,
    /// |G|·|A|.
    pub tilde_order: usize,
    /// |K| = |A|.
    pub kernel_order: usize,
    pub rule: Arc<QuotientRule>,
    pub quotient: Arc<FiniteGroup>,
    pub hom: TwistedHomomorphism,
}

pub fn metaplectic_lift(g: &Arc<FiniteGroup>, a: &AbelianStructure, beta: &PairingForm, limits: &Limits) -> Result<MetaplecticLift> {
    if !Arc::ptr_eq(a.group(), g) {
        return Err(ConstructionError::InvalidParameter("A must be a subgroup of G".into()));
    }
    if beta.radix() != a.radix() {
        return Err(ConstructionError::InvalidParameter("β must be given on the character coordinates of A".into()));
    }
    if g.order() > u16::MAX as usize {
        return Err(ConstructionError::InvalidParameter(format!("|G| = {} is too large for the encoding", g.order())));
    }
    if !a.subgroup().is_normal() {
        return Err(ConstructionError::InvalidParameter("A is not normal in G".into()));
    }
    let radix = a.radix().clone();
    let n = radix.size();
    let chars: Vec<Vec<u64>> = radix.iter().collect();
    let eb = beta.exponent();
    let mut act: Vec<Vec<u16>> = Vec::with_capacity(g.order());
    let mut solutions_raw = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let images = a.dual_action(x)?;
        let moved: Vec<Vec<u64>> = chars.iter().map(|k| apply_action(&radix, &images, k)).collect();
        act.push(moved.iter().map(|k| radix.index(k) as u16).collect());
        let table = CochainTable::from_fn(radix.clone(), eb, |k1, k2| {
            let (i, j) = (radix.index(k1), radix.index(k2));
            (beta.exp(&moved[i], &moved[j]) + eb - beta.exp(k1, k2)) % eb
        });
        if !table.is_symmetric() {
            let (i, j) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| table.at(i, j) != table.at(j, i))
                .expect("asymmetric entry");
            return Err(ConstructionError::Hypothesis(format!(
                "β_g is not symmetric for g = {} at characters {:?}, {:?}",
                g.label(x),
                chars[i],
                chars[j]
            )));
        }
        solutions_raw.push(trivialize_symmetric_cocycle(&table, true)?);
    }
    let modulus = solutions_raw.iter().fold(lcm(eb, a.exponent()), |m, s| lcm(m, s.modulus));
    if modulus > u8::MAX as u64 {
        return Err(ConstructionError::InvalidParameter(format!("working modulus {modulus} is too large for the encoding")));
    }
    let solutions: Vec<Vec<u64>> =
        solutions_raw.iter().map(|s| s.values.iter().map(|&v| v * (modulus / s.modulus) % modulus).collect()).collect();
    let ea = a.exponent();
    let char_of: Vec<Vec<u64>> = radix
        .iter()
        .map(|x| chars.iter().map(|k| a.character(k).exp_at(&x) * (modulus / ea) % modulus).collect())
        .collect();
    let coset_min: Vec<(usize, usize)> = (0..g.order())
        .map(|x| a.elements().iter().enumerate().map(|(pos, &y)| (g.mul(x, y), pos)).min().expect("A is nonempty"))
        .collect();
    let tilde = TildeRule { base: g.clone(), act, modulus };
    let rule = Arc::new(QuotientRule { tilde, coset_min, char_of });
    let mut gens: Vec<Vec<u8>> = g.generators().iter().map(|&x| rule.canonical(x, &solutions[x])).collect();
    for pos in 0..a.radix().rank() {
        let unit = radix.unit(pos);
        let p = radix.index(&unit);
        gens.push(rule.canonical(g.identity(), &rule.char_of[p]));
    }
    let quotient = Arc::new(FiniteGroup::closure(
        &format!("Mp[{}]", g.name()),
        rule.clone(),
        &gens,
        limits.closure_cap,
        limits.table_cap,
    )?);
    let roots: Vec<Cyclotomic> = (0..modulus).map(|k| Cyclotomic::root(modulus as u32, k as i64)).collect();
    let encodings = quotient.encodings().expect("structured quotient");
    let images: Vec<AlgebraElement> = encodings
        .iter()
        .map(|enc| {
            let (x, c) = rule.tilde.decode(enc);
            let values: Vec<Cyclotomic> = c.iter().map(|&k| roots[k as usize].clone()).collect();
            AlgebraElement::basis(g, x).mul(&from_dual_values(a, &values))
        })
        .collect();
    let table: Vec<Cyclotomic> =
        chars.iter().flat_map(|k1| chars.iter().map(|k2| beta.value(k1, k2)).collect::<Vec<_>>()).collect();
    let hom = TwistedHomomorphism { source: quotient.clone(), target: g.clone(), images, twist: from_dual_table(a, &table) };
    Ok(MetaplecticLift {
        base: g.clone(),
        a: a.clone(),
        beta: beta.clone(),
        modulus,
        solutions,
        tilde_order: g.order() * n,
        kernel_order: n,
        rule,
        quotient,
        hom,
    })
}

impl MetaplecticLift {
    /// Every stored c_g satisfies c(χξ) = β_g(χ,ξ)c(χ)c(ξ).
    pub fn solutions_valid(&self) -> bool {
        let radix = self.a.radix();
        let m = self.modulus;
        let scale = m / self.beta.exponent();
        let chars: Vec<Vec<u64>> = radix.iter().collect();
        (0..self.base.order()).all(|x| {
            let act = &self.rule.tilde.act[x];
            let c = &self.solutions[x];
            chars.iter().enumerate().all(|(i, k1)| {
                chars.iter().enumerate().all(|(j, k2)| {
                    let (gi, gj) = (radix.coords(act[i] as usize), radix.coords(act[j] as usize));
                    let bg = (self.beta.exp(&gi, &gj) + self.beta.exponent() - self.beta.exp(k1, k2)) * scale % m;
                    let ij = radix.index(&radix.add(k1, k2));
                    c[ij] == (bg + c[i] + c[j]) % m
                })
            })
        })
    }

    /// tilde G as a group; only feasible for small G.
    pub fn tilde_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let tilde = &self.rule.tilde;
        let tr = Arc::new(TildeRule { base: tilde.base.clone(), act: tilde.act.clone(), modulus: tilde.modulus });
        let g = &self.base;
        let mut gens: Vec<Vec<u8>> = g.generators().iter().map(|&x| tr.encode(x, &self.solutions[x])).collect();
        let radix = self.a.radix();
        for pos in 0..radix.rank() {
            let p = radix.index(&radix.unit(pos));
            gens.push(tr.encode(g.identity(), &self.rule.char_of[p]));
        }
        Ok(FiniteGroup::closure(&format!("tilde[{}]", g.name()), tr, &gens, limits.closure_cap, limits.table_cap)?)
    }

    /// Index in overline G of the class of (a, 1).
    pub fn a_copy(&self, a: usize) -> usize {
        let zeros = vec![0; self.a.order()];
        self.quotient.index_of(&self.rule.canonical(a, &zeros)).expect("A-copy lies in the quotient")
    }

    /// {(a,1)} is normal in overline G and generators act on it as their images in G do.
    pub fn a_copy_equivariant(&self) -> bool {
        let q = &self.quotient;
        let enc = q.encodings().expect("structured quotient");
        q.generators().iter().all(|&s| {
            let (gs, _) = self.rule.tilde.decode(&enc[s]);
            self.a.generators().iter().all(|&x| q.conj(s, self.a_copy(x)) == self.a_copy(self.base.conj(gs, x)))
        })
    }
}
