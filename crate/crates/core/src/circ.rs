//! The composition law on anti-symmetric form twists and its square identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistlab_cyclo::lcm;
use twistlab_groups::Subgroup;

use crate::abelian::AbelianStructure;
use crate::config::Limits;
use crate::form::{FormFlags, PairingForm};
use crate::hopf::coboundary_of_unit;
use crate::tensor::TensorElement;
use crate::twist::{diagonal_gauge_solve, form_from_twist, FormTwist};
use crate::{Result, TwistError};

/// Random factorization pairs checked by [`circ`].
pub const FACTORIZATION_SAMPLES: usize = 100;

#[derive(Debug, Clone)]
pub struct CircResult {
    pub twist: FormTwist,
    /// A₁ ∩ A₂.
    pub intersection: Vec<usize>,
    /// K = {c ∈ A₁∩A₂ : α₁(x,c)α₂(x,c) = 1 for all x ∈ A₁∩A₂}.
    pub kernel_k: Vec<usize>,
    /// |A₁A₂|.
    pub product_order: usize,
    pub flags: FormFlags,
    pub samples_checked: usize,
    /// Whether (u₁u₂,v₁v₂) ↦ α₁(u₁,v₁)α₂(u₂,v₂) is bi-multiplicative on A as a subgroup of G.
    pub literal_bimultiplicative: bool,
    /// Pairs of A on which that literal value equals the returned form.
    pub literal_agreements: usize,
    /// R = F₁F₂²F₁.
    pub square: TensorElement,
}

/// Exponents of α₁(u₁,·) and α₂(u₂,·) on a list of test elements, both scaled to ζ_l.
struct Evaluator<'a> {
    t1: &'a FormTwist,
    t2: &'a FormTwist,
    l: u64,
}

impl Evaluator<'_> {
    fn a1(&self, x: usize, y: usize) -> u64 {
        let s = self.t1.structure();
        let f = self.t1.form();
        f.exp(&s.coords(x).unwrap(), &s.coords(y).unwrap()) * (self.l / f.exponent())
    }

    fn a2(&self, x: usize, y: usize) -> u64 {
        let s = self.t2.structure();
        let f = self.t2.form();
        f.exp(&s.coords(x).unwrap(), &s.coords(y).unwrap()) * (self.l / f.exponent())
    }

    /// α₁(u₁,c) = α₂(u₂,c) for every c in `test`.
    fn compatible(&self, u1: usize, u2: usize, test: &[usize]) -> bool {
        test.iter().all(|&c| self.a1(u1, c) % self.l == self.a2(u2, c) % self.l)
    }

    /// α₁(u₁,v₁)α₂(u₂,v₂) as an exponent of ζ_l.
    fn value(&self, u: (usize, usize), v: (usize, usize)) -> u64 {
        (self.a1(u.0, v.0) + self.a2(u.1, v.1)) % self.l
    }
}

fn check_inputs(t1: &FormTwist, t2: &FormTwist) -> Result<()> {
    let g = t1.group();
    if !std::sync::Arc::ptr_eq(g, t2.group()) {
        return Err(TwistError::Hypothesis("twists live on different groups".into()));
    }
    if g.order().is_multiple_of(2) {
        return Err(TwistError::EvenOrder(g.order()));
    }
    for t in [t1, t2] {
        if !t.form().is_alternating() {
            return Err(TwistError::Hypothesis("form is not alternating, so the twist is not anti-symmetric".into()));
        }
        if !t.form().is_invariant(&ambient_actions(t.structure())?) {
            return Err(TwistError::Hypothesis("form is not invariant under conjugation".into()));
        }
    }
    Ok(())
}

pub(crate) fn ambient_actions(a: &AbelianStructure) -> Result<Vec<Vec<Vec<u64>>>> {
    a.group().generators().iter().map(|&g| a.conjugation_action(g)).collect()
}

/// x ∘ y: the form twist (A, α) with A = ker π ⊂ A₁A₂ and F_(A,α)² = F₁F₂²F₁.
///
/// The factorization formula α(u₁u₂,v₁v₂) = α₁(u₁,v₁)α₂(u₂,v₂) is evaluated as well; its
/// independence of the factorization is sampled, and how far it is from the returned
/// form is reported.
pub fn circ(t1: &FormTwist, t2: &FormTwist, limits: &Limits) -> Result<CircResult> {
    circ_with_samples(t1, t2, FACTORIZATION_SAMPLES, limits.seed)
}

pub fn circ_with_samples(t1: &FormTwist, t2: &FormTwist, samples: usize, seed: u64) -> Result<CircResult> {
    check_inputs(t1, t2)?;
    let g = t1.group();
    let s1 = t1.structure().subgroup();
    let s2 = t2.structure().subgroup();
    let inter = s1.intersection(s2);
    let ev = Evaluator { t1, t2, l: lcm(t1.form().exponent(), t2.form().exponent()) };
    let inter_gens = inter.generators();
    let k: Vec<usize> = inter
        .members()
        .iter()
        .copied()
        .filter(|&c| inter_gens.iter().all(|&x| (ev.a1(x, c) + ev.a2(x, c)).is_multiple_of(ev.l)))
        .collect();
    let k_gens = Subgroup::from_members(g, k.clone())?.generators();

    // A₁A₂ with one factorization per element, then the kernel of π.
    let mut some_factor: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    for &u1 in s1.members() {
        for &u2 in s2.members() {
            let a = g.mul(u1, u2);
            if some_factor[a].is_none() {
                some_factor[a] = Some((u1, u2));
            }
        }
    }
    let product_order = some_factor.iter().filter(|f| f.is_some()).count();
    let kernel: Vec<usize> = (0..g.order())
        .filter(|&a| some_factor[a].is_some_and(|(u1, u2)| ev.compatible(u1, u2, &k_gens)))
        .collect();
    let a_sub = Subgroup::from_members(g, kernel)?;
    if !a_sub.is_abelian() {
        return Err(TwistError::InternalConsistency("kernel of π is not abelian".into()));
    }
    let a = if a_sub == *s1 {
        t1.structure().clone()
    } else if a_sub == *s2 {
        t2.structure().clone()
    } else {
        AbelianStructure::from_subgroup(&a_sub)?
    };

    // All factorizations compatible on the whole intersection, per element of A.
    let factorizations: Vec<Vec<(usize, usize)>> = a
        .elements()
        .iter()
        .map(|&x| {
            s1.members()
                .iter()
                .filter_map(|&u1| {
                    let u2 = g.mul(g.inv(u1), x);
                    (s2.contains(u2) && ev.compatible(u1, u2, &inter_gens)).then_some((u1, u2))
                })
                .collect()
        })
        .collect();
    if let Some(pos) = factorizations.iter().position(|f| f.is_empty()) {
        return Err(TwistError::InternalConsistency(format!(
            "element {} of ker π has no compatible factorization",
            g.label(a.elements()[pos])
        )));
    }

    // Literal values α₁(u₁,v₁)α₂(u₂,v₂) on the first compatible factorizations.
    let e = a.exponent();
    let to_form_exp = |m: u64| -> Result<u64> {
        if !(m * e).is_multiple_of(ev.l) {
            return Err(TwistError::InternalConsistency("α takes a value outside μ_exp(A)".into()));
        }
        Ok(m * e / ev.l)
    };
    let n = a.order();
    let mut literal = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            literal[i * n + j] = to_form_exp(ev.value(factorizations[i][0], factorizations[j][0]))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let fu = &factorizations[i];
        let fv = &factorizations[j];
        let u = fu[rng.gen_range(0..fu.len())];
        let v = fv[rng.gen_range(0..fv.len())];
        if to_form_exp(ev.value(u, v))? != literal[i * n + j] {
            return Err(TwistError::InternalConsistency(format!(
                "α depends on the factorization at ({}, {})",
                g.label(a.elements()[i]),
                g.label(a.elements()[j])
            )));
        }
    }
    let literal_bimultiplicative = PairingForm::from_table(a.radix().clone(), e, &literal).is_ok();

    // The form with F_(A,α)² = F₁F₂²F₁: R = F_(A,β) forces α = β².
    let square = t1.realized().mul(t2.realized()).mul(t2.realized()).mul(t1.realized());
    let beta = form_from_twist(&square, &a)
        .map_err(|err| TwistError::InternalConsistency(format!("F₁F₂²F₁ is not a form twist over ker π: {err}")))?
        .group_sum
        .ok_or_else(|| TwistError::InternalConsistency("F₁F₂²F₁ has no group-sum form over ker π".into()))?;
    let form = beta.pow(2);
    let coords: Vec<Vec<u64>> = a.radix().iter().collect();
    let literal_agreements = (0..n * n).filter(|&ij| literal[ij] == form.exp(&coords[ij / n], &coords[ij % n])).count();

    let flags = form.flags(Some(&ambient_actions(&a)?));
    let twist = FormTwist::new(a, form)?;
    Ok(CircResult {
        twist,
        intersection: inter.members().to_vec(),
        kernel_k: k,
        product_order,
        flags,
        samples_checked: samples,
        literal_bimultiplicative,
        literal_agreements,
        square,
    })
}

/// How R compares with one candidate form twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareMatch {
    Exact,
    /// Equal after a gauge by a unit diagonal in the idempotents of A.
    Gauge,
    Neither,
}

impl SquareMatch {
    pub fn as_str(self) -> &'static str {
        match self {
            SquareMatch::Exact => "exact",
            SquareMatch::Gauge => "gauge",
            SquareMatch::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    /// R versus F_(A,α²).
    pub plus_two: SquareMatch,
    /// R versus F_(A,α⁻²).
    pub minus_two: SquareMatch,
    /// Every k in 0..exp(A) with R = F_(A,α^k) exactly.
    pub exact_exponents: Vec<u64>,
}

impl SquareReport {
    /// "+2", "-2", "±2" when both agree, or "none".
    pub fn branch(&self) -> &'static str {
        match (self.plus_two, self.minus_two) {
            (SquareMatch::Exact, SquareMatch::Exact) => "±2",
            (SquareMatch::Exact, _) => "+2",
            (_, SquareMatch::Exact) => "-2",
            (SquareMatch::Gauge, SquareMatch::Gauge) => "±2 (gauge)",
            (SquareMatch::Gauge, _) => "+2 (gauge)",
            (_, SquareMatch::Gauge) => "-2 (gauge)",
            _ => "none",
        }
    }

    pub fn matched(&self) -> bool {
        self.plus_two != SquareMatch::Neither || self.minus_two != SquareMatch::Neither
    }
}

/// Compare R = F₁F₂²F₁ with F_(A,α^{±2}) for the composite (A, α).
pub fn circ_square_verify(t1: &FormTwist, t2: &FormTwist, t12: &FormTwist, limits: &Limits) -> Result<SquareReport> {
    let f1 = t1.realized();
    let f2 = t2.realized();
    let r = f1.mul(f2).mul(f2).mul(f1);
    let e = t12.form().exponent();
    let mut exact_exponents = Vec::new();
    for k in 0..e {
        if *t12.with_form(t12.form().pow(k as i64))?.realized() == r {
            exact_exponents.push(k);
        }
    }
    let classify = |k: i64| -> Result<SquareMatch> {
        if exact_exponents.contains(&(k.rem_euclid(e as i64) as u64)) {
            return Ok(SquareMatch::Exact);
        }
        let cand = t12.with_form(t12.form().pow(k))?;
        let q: TensorElement = r.mul(&cand.realized().inverse_with(limits)?);
        match diagonal_gauge_solve(&q, t12.structure())? {
            Some(u) if coboundary_of_unit(&u, limits)? == q => Ok(SquareMatch::Gauge),
            _ => Ok(SquareMatch::Neither),
        }
    };
    Ok(SquareReport { plus_two: classify(2)?, minus_two: classify(-2)?, exact_exponents })
}
