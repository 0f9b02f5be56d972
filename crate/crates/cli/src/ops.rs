//! The operations a scenario step can name.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use twistlab_constructions::{
    abelian_structure, asp, build_group, f243_cubic_example, heisenberg, mcc_group, metaplectic_lift, quadratic_example,
    triform_from_fn, AffineSymplectic, Heisenberg, MetaplecticLift, QuadraticExample,
};
use twistlab_core::abelian::apply_action;
use twistlab_core::circ::{circ_square_verify, circ_with_samples};
use twistlab_core::classpres::{h1_brute_force, h1_detector};
use twistlab_core::commutator::{check_u, commutator_formula_check, commutator_subgroup, commutator_twist, solve_u, triform_c};
use twistlab_core::form::{enumerate_invariant_forms, FormRequirements};
use twistlab_core::hopf::{coboundary_of_unit, drinfeld_conditions_check, invariance_check, DrinfeldReport};
use twistlab_core::lagrangian::{lagrangian_decomposition, section_with_cocycle, span};
use twistlab_core::separation::separate_symmetric_antisymmetric;
use twistlab_core::skew::skew_group_algebra_iso_check;
use twistlab_core::triangular::enumerate_triangular_structures;
use twistlab_core::twist::{from_dual_table, from_dual_values, is_antisymmetric, twlag_element};
use twistlab_core::twisted_hom::{twisted_homomorphism_check, Coverage};
use twistlab_core::{AbelianStructure, AlgebraElement, FormTwist, Limits, PairingForm, Presentation, TensorElement};
use twistlab_cyclo::{mth_root_in_mu, Cyclotomic};
use twistlab_groups::{
    automorphism_group, class_preserving_filter, enumerate_normal_abelian_subgroups, fingerprint, fingerprints_differ,
    FiniteGroup, Subgroup,
};

use crate::error::{CliError, OpError};
use crate::files::{group_path_of, parse_group, parse_twist_file, read_text, TwistFile};
use crate::report::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Str,
    /// A group-spec file path, or inline spec text when the value spans several lines.
    Group,
    /// A twist file path.
    Twist,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Int => "integer",
            Kind::Str => "string",
            Kind::Group => "group file",
            Kind::Twist => "twist file",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Fallback {
    Required,
    Int(i64),
    Str(&'static str),
}

#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    pub kind: Kind,
    pub default: Fallback,
}

const fn int(name: &'static str, default: i64) -> Param {
    Param { name, kind: Kind::Int, default: Fallback::Int(default) }
}

const fn required(name: &'static str, kind: Kind) -> Param {
    Param { name, kind, default: Fallback::Required }
}

type Runner = fn(&mut Ctx, &Args) -> Result<Outcome, OpError>;

pub struct OpDef {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [Param],
    run: Runner,
}

pub static OPS: &[OpDef] = &[
    OpDef { name: "heisenberg.twists", summary: "twist axioms and invariance of F_x, F_y", params: &[int("p", 5)], run: op_heisenberg_twists },
    OpDef { name: "presentation.lemma", summary: "group-sum versus idempotent presentations", params: &[int("p", 5)], run: op_presentation },
    OpDef { name: "heisenberg.commutator", summary: "[F_x,F_y], its c-formula and the unit u", params: &[int("p", 5)], run: op_heisenberg_commutator },
    OpDef { name: "heisenberg.circ", summary: "the composite twist of F_x and F_y", params: &[int("p", 5), int("samples", 100)], run: op_heisenberg_circ },
    OpDef { name: "heisenberg.triangular", summary: "triangular structures on Heisenberg(p)", params: &[int("p", 5)], run: op_heisenberg_triangular },
    OpDef { name: "skew.rule", summary: "skew-group-algebra product rule", params: &[int("p", 5)], run: op_skew },
    OpDef { name: "separation", summary: "symmetric times anti-symmetric factorization", params: &[Param { name: "family", kind: Kind::Str, default: Fallback::Str("heisenberg") }, int("p", 5)], run: op_separation },
    OpDef { name: "asp.group", summary: "ASp(n,2) with V* and the form beta", params: &[int("n", 2)], run: op_asp },
    OpDef { name: "metaplectic.lift", summary: "the metaplectic lift of ASp(n,2)", params: &[int("n", 2), int("samples", 1000)], run: op_metaplectic },
    OpDef { name: "quadratic.example", summary: "x = sum (-1)^q(v) p_v and its cocycle psi", params: &[int("n", 2)], run: op_quadratic },
    OpDef { name: "quadratic.h1", summary: "H1 detector against the class of psi", params: &[int("n", 2)], run: op_quadratic_h1 },
    OpDef { name: "m11cubic", summary: "the cubic form over GF(243) and its M11 generators", params: &[], run: op_m11cubic },
    OpDef { name: "lagrangian", summary: "Lagrangian machinery on (Z/p^2)^2", params: &[int("p", 5)], run: op_lagrangian },
    OpDef { name: "mcc", summary: "M(C,c) for C = Z/n and c = zeta^(xyz)", params: &[int("n", 5)], run: op_mcc },
    OpDef { name: "enumerate", summary: "normal abelian subgroups, forms, triangular structures or twists", params: &[required("group", Kind::Group), required("what", Kind::Str)], run: op_enumerate },
    OpDef { name: "twist.verify", summary: "twist axioms for a twist file", params: &[required("group", Kind::Group), required("twist", Kind::Twist)], run: op_twist_verify },
    OpDef { name: "twist.compose", summary: "product and composite of two twists", params: &[required("first", Kind::Twist), required("second", Kind::Twist)], run: op_twist_compose },
    OpDef { name: "twist.commutator", summary: "commutator of two twists and its unit u", params: &[required("first", Kind::Twist), required("second", Kind::Twist)], run: op_twist_commutator },
    OpDef { name: "classpreserving", summary: "class-preserving automorphisms", params: &[required("group", Kind::Group)], run: op_classpreserving },
];

pub fn lookup(name: &str) -> Option<&'static OpDef> {
    OPS.iter().find(|o| o.name == name)
}

/// Type-checked arguments with file contents loaded and parsed.
#[derive(Debug, Clone)]
pub struct Args {
    pub values: BTreeMap<String, Value>,
    groups: BTreeMap<String, String>,
    twists: BTreeMap<String, (TwistFile, Option<String>)>,
}

impl Args {
    fn int(&self, name: &str) -> i64 {
        self.values[name].as_i64().expect("type-checked integer")
    }

    fn str(&self, name: &str) -> &str {
        self.values[name].as_str().expect("type-checked string")
    }

    /// Inputs that identify the computation: values plus digests of file contents.
    pub fn key_material(&self) -> BTreeMap<String, Value> {
        let digest = |s: &str| hex::encode(Sha256::digest(s.as_bytes()));
        let mut out = BTreeMap::new();
        for (k, v) in &self.values {
            if let Some(text) = self.groups.get(k) {
                out.insert(k.clone(), json!({ "group_sha256": digest(text) }));
            } else if let Some((tf, g)) = self.twists.get(k) {
                let twist = format!("{}|{:?}|{}", tf.name, tf.generators, tf.form);
                out.insert(k.clone(), json!({ "twist": digest(&twist), "group_sha256": g.as_deref().map(digest) }));
            } else {
                out.insert(k.clone(), v.clone());
            }
        }
        out
    }
}

fn group_text(value: &str, base: &Path) -> Result<(String, String), CliError> {
    if value.contains('\n') {
        Ok((value.to_string(), "<inline group>".to_string()))
    } else {
        let path = base.join(value);
        Ok((read_text(&path)?, path.display().to_string()))
    }
}

impl OpDef {
    /// Check argument names and types, fill defaults, and load files relative to `base`.
    pub fn prepare(&self, raw: &BTreeMap<String, Value>, base: &Path, step: &str) -> Result<Args, CliError> {
        let usage = |msg: String| CliError::Usage(format!("step `{step}` ({}): {msg}", self.name));
        if let Some(extra) = raw.keys().find(|k| !self.params.iter().any(|p| p.name == k.as_str())) {
            let known: Vec<&str> = self.params.iter().map(|p| p.name).collect();
            return Err(usage(format!("unknown argument `{extra}`; expected one of {known:?}")));
        }
        let mut args = Args { values: BTreeMap::new(), groups: BTreeMap::new(), twists: BTreeMap::new() };
        for p in self.params {
            let v = match (raw.get(p.name), p.default) {
                (Some(v), _) => v.clone(),
                (None, Fallback::Int(d)) => json!(d),
                (None, Fallback::Str(d)) => json!(d),
                (None, Fallback::Required) => return Err(usage(format!("missing argument `{}`", p.name))),
            };
            let ok = match p.kind {
                Kind::Int => v.is_i64(),
                Kind::Str | Kind::Group | Kind::Twist => v.is_string(),
            };
            if !ok {
                return Err(usage(format!("argument `{}` must be of type {}, got {v}", p.name, p.kind.name())));
            }
            match p.kind {
                Kind::Group => {
                    let (text, source) = group_text(v.as_str().unwrap_or_default(), base)?;
                    parse_group(&text, &source)?;
                    args.groups.insert(p.name.to_string(), text);
                }
                Kind::Twist => {
                    let path = base.join(v.as_str().unwrap_or_default());
                    let tf = parse_twist_file(&read_text(&path)?, &path.display().to_string())?;
                    let group = match group_path_of(&path, &tf) {
                        Some(gp) => {
                            let text = read_text(&gp)?;
                            parse_group(&text, &gp.display().to_string())?;
                            Some(text)
                        }
                        None => None,
                    };
                    args.twists.insert(p.name.to_string(), (tf, group));
                }
                Kind::Int | Kind::Str => {}
            }
            args.values.insert(p.name.to_string(), v);
        }
        Ok(args)
    }

    pub fn execute(&self, ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
        (self.run)(ctx, args)
    }
}

/// Shared state across the steps of one run: limits and memoized constructions.
pub struct Ctx {
    pub limits: Limits,
    heis: HashMap<u32, Arc<Heisenberg>>,
    asps: HashMap<usize, Arc<AffineSymplectic>>,
    lifts: HashMap<usize, Arc<MetaplecticLift>>,
    quads: HashMap<usize, Arc<QuadraticExample>>,
    groups: HashMap<String, Arc<FiniteGroup>>,
}

impl Ctx {
    pub fn new(limits: Limits) -> Ctx {
        Ctx {
            limits,
            heis: HashMap::new(),
            asps: HashMap::new(),
            lifts: HashMap::new(),
            quads: HashMap::new(),
            groups: HashMap::new(),
        }
    }

    fn heisenberg(&mut self, p: i64) -> Result<Arc<Heisenberg>, OpError> {
        let p = u32::try_from(p).map_err(|_| OpError::Failed(format!("p = {p} is out of range")))?;
        if let Some(h) = self.heis.get(&p) {
            return Ok(h.clone());
        }
        let h = Arc::new(heisenberg(p, &self.limits)?);
        self.heis.insert(p, h.clone());
        Ok(h)
    }

    fn asp(&mut self, n: i64) -> Result<Arc<AffineSymplectic>, OpError> {
        let n = dim(n)?;
        if let Some(a) = self.asps.get(&n) {
            return Ok(a.clone());
        }
        let a = Arc::new(asp(n, &self.limits)?);
        self.asps.insert(n, a.clone());
        Ok(a)
    }

    fn lift(&mut self, n: i64) -> Result<Arc<MetaplecticLift>, OpError> {
        let a = self.asp(n)?;
        if let Some(l) = self.lifts.get(&a.n) {
            return Ok(l.clone());
        }
        let l = Arc::new(metaplectic_lift(&a.group, &a.dual, &a.beta, &self.limits)?);
        self.lifts.insert(a.n, l.clone());
        Ok(l)
    }

    fn quadratic(&mut self, n: i64) -> Result<Arc<QuadraticExample>, OpError> {
        let n = dim(n)?;
        if let Some(q) = self.quads.get(&n) {
            return Ok(q.clone());
        }
        let q = Arc::new(quadratic_example(n, &self.limits)?);
        self.quads.insert(n, q.clone());
        Ok(q)
    }

    fn group(&mut self, text: &str) -> Result<Arc<FiniteGroup>, OpError> {
        if let Some(g) = self.groups.get(text) {
            return Ok(g.clone());
        }
        let spec = twistlab_groups::parse_group_spec(text)?;
        let g = build_group(&spec, &self.limits)?;
        self.groups.insert(text.to_string(), g.clone());
        Ok(g)
    }

    fn arg_group(&mut self, args: &Args, name: &str) -> Result<Arc<FiniteGroup>, OpError> {
        let text = args.groups[name].clone();
        self.group(&text)
    }

    fn arg_twist(&mut self, args: &Args, name: &str, fallback: Option<&Arc<FiniteGroup>>) -> Result<(String, FormTwist), OpError> {
        let (tf, group) = &args.twists[name];
        let g = match (group, fallback) {
            (_, Some(g)) => g.clone(),
            (Some(text), None) => self.group(text)?,
            (None, None) => return Err(OpError::Failed(format!("twist {} names no `group` file", tf.name))),
        };
        Ok((tf.name.clone(), tf.build(&g)?))
    }
}

fn dim(n: i64) -> Result<usize, OpError> {
    usize::try_from(n).map_err(|_| OpError::Failed(format!("n = {n} is out of range")))
}

fn digest(t: &TensorElement) -> String {
    hex::encode(Sha256::digest(t.to_string().as_bytes()))
}

fn drinfeld_into(out: &mut Outcome, prefix: &str, rep: &DrinfeldReport) {
    out.check(format!("{prefix}invertible"), rep.invertible);
    out.check(format!("{prefix}counital"), rep.counital);
    if rep.cocycle == twistlab_core::hopf::CheckStatus::Unchecked {
        out.unchecked.push(format!("{prefix}cocycle"));
    } else {
        out.check(format!("{prefix}cocycle"), rep.cocycle.passed());
    }
    out.value(format!("{prefix}cocycle_status"), rep.cocycle.as_str());
}

fn sorted_members(a: &AbelianStructure) -> Vec<usize> {
    let mut m = a.elements().to_vec();
    m.sort_unstable();
    m
}

fn center_of(h: &Heisenberg) -> Result<AbelianStructure, OpError> {
    Ok(AbelianStructure::with_generators(&Subgroup::generated(&h.group, &[h.c]), &[h.c])?)
}

/// F_(A,k·std) for A = ⟨gens⟩ with the standard alternating form on two generators.
fn std_twist(g: &Arc<FiniteGroup>, gens: &[usize], k: i64) -> Result<FormTwist, OpError> {
    let a = AbelianStructure::with_generators(&Subgroup::generated(g, gens), gens)?;
    let form = PairingForm::new(a.radix().clone(), vec![vec![0, k], vec![-k, 0]])?;
    Ok(FormTwist::new(a, form)?)
}

fn op_heisenberg_twists(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let h = ctx.heisenberg(args.int("p"))?;
    let mut out = Outcome::default();
    out.value("group_order", h.group.order());
    out.value("center_order", twistlab_groups::center(&h.group).len());
    for (label, t) in [("x", h.twist_x()?), ("y", h.twist_y()?)] {
        let f = t.realized();
        drinfeld_into(&mut out, &format!("F_{label}."), &drinfeld_conditions_check(f, &ctx.limits));
        out.check(format!("F_{label}.invariant"), invariance_check(f));
        out.check(format!("F_{label}.antisymmetric"), is_antisymmetric(f));
        out.value(format!("F_{label}.form"), t.form().to_string());
        out.value(format!("F_{label}.subgroup"), sorted_members(t.structure()));
        out.value(format!("F_{label}.nnz"), f.nnz());
        out.value(format!("F_{label}.sha256"), digest(f));
    }
    Ok(out)
}

/// Pairs (A,β) on which the two presentations are compared: two on Heisenberg(p)
/// and two on (Z/p)² inside the abelian ambient (Z/p)³.
pub fn presentation_pairs(h: &Heisenberg, limits: &Limits) -> Result<Vec<(String, FormTwist)>, OpError> {
    let p = h.p as u64;
    let ambient = Arc::new(FiniteGroup::abelian(&[p, p, p], limits.table_cap));
    let radix = twistlab_core::Radix::new(vec![p, p, p]);
    let e1 = radix.index(&radix.unit(0));
    let e2 = radix.index(&radix.unit(1));
    let xy = h.group.mul(h.x, h.y);
    Ok(vec![
        ("heisenberg <x,c> std".to_string(), std_twist(&h.group, &[h.x, h.c], 1)?),
        ("heisenberg <xy,c> std^2".to_string(), std_twist(&h.group, &[xy, h.c], 2)?),
        ("(Z/p)^2 in (Z/p)^3 std".to_string(), std_twist(&ambient, &[e1, e2], 1)?),
        ("(Z/p)^2 in (Z/p)^3 std^3".to_string(), std_twist(&ambient, &[e1, e2], 3)?),
    ])
}

fn op_presentation(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let h = ctx.heisenberg(args.int("p"))?;
    let mut out = Outcome::default();
    let pairs = presentation_pairs(&h, &ctx.limits)?;
    for (label, t) in &pairs {
        let sum = t.realize(Presentation::GroupSum)?;
        let idem = t.realize(Presentation::Idempotent)?;
        out.check(format!("{label}: presentations agree"), sum == idem);
        out.value(format!("{label}: form"), t.form().to_string());
    }
    out.value("pairs", pairs.len());
    Ok(out)
}

/// Σ ε^{(i²j+j²i)b} p_j⊗p_i over the idempotents of ⟨c⟩.
pub fn heisenberg_display(h: &Heisenberg) -> Result<TensorElement, OpError> {
    let center = center_of(h)?;
    let p = h.p as usize;
    let mut table = vec![Cyclotomic::zero(h.p); p * p];
    for i in 0..p {
        for j in 0..p {
            let e = ((i * i * j + j * j * i) as u64 * h.b()) % p as u64;
            table[j * p + i] = Cyclotomic::root(h.p, e as i64);
        }
    }
    Ok(from_dual_table(&center, &table))
}

/// Σ η^{-f(k)·b} p_k with η a cube root of ε in μ_∞.
pub fn heisenberg_u(h: &Heisenberg, exponent: impl Fn(i64) -> i64) -> Result<AlgebraElement, OpError> {
    let center = center_of(h)?;
    let eps = Cyclotomic::root(h.p, 1);
    let eta = mth_root_in_mu(&eps, 3).map_err(|e| OpError::Failed(e.to_string()))?;
    let values = (0..h.p as i64)
        .map(|k| eta.pow(-exponent(k) * h.b() as i64).map_err(|e| OpError::Failed(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(from_dual_values(&center, &values))
}

fn op_heisenberg_commutator(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let h = ctx.heisenberg(args.int("p"))?;
    let limits = ctx.limits.clone();
    let (tx, ty) = (h.twist_x()?, h.twist_y()?);
    let j = commutator_twist(&tx, &ty, &limits)?;
    let mut out = Outcome::default();
    out.value("commutator.nnz", j.nnz());
    out.value("commutator.sha256", digest(&j));
    out.check("commutator_formula", commutator_formula_check(&tx, &ty, &limits)?);
    let c = triform_c(&tx, &ty)?;
    out.value("c.symmetric", c.is_symmetric());
    out.value("c.trivial", c.is_trivial());
    let u = solve_u(&c)?;
    let rep = check_u(&u, &c, &j, &limits)?;
    out.check("solve_u.coboundary_matches_commutator", rep.coboundary_matches_commutator);
    out.check("solve_u.invariant", rep.invariant);
    out.check("solve_u.pair_identity_coboundary", rep.pair_identity_coboundary);
    out.value("solve_u.pair_identity_displayed", rep.pair_identity_displayed);
    out.value("solve_u.exponents", &u.exponents);
    // The displayed closed forms are recorded as observations.
    out.value("display.commutator_matches", heisenberg_display(&h)? == j);
    let literal = coboundary_of_unit(&heisenberg_u(&h, |k| k)?, &limits)?;
    out.value("display.literal_u_coboundary_matches", literal == j);
    let corrected = coboundary_of_unit(&heisenberg_u(&h, |k| k * k * k)?, &limits)?;
    out.value("display.cubic_u_coboundary_matches", corrected == j);
    Ok(out)
}

fn op_heisenberg_circ(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let h = ctx.heisenberg(args.int("p"))?;
    let samples = dim(args.int("samples"))?;
    let (tx, ty) = (h.twist_x()?, h.twist_y()?);
    let res = circ_with_samples(&tx, &ty, samples, ctx.limits.seed)?;
    let mut out = Outcome::default();
    out.check("alternating", res.flags.alternating);
    out.check("nondegenerate", res.flags.nondegenerate);
    out.check("invariant", res.flags.invariant == Some(true));
    out.check("factorization_independent", true);
    out.value("samples_checked", res.samples_checked);
    out.value("form", res.twist.form().to_string());
    out.value("subgroup", sorted_members(res.twist.structure()));
    out.value("literal_bimultiplicative", res.literal_bimultiplicative);
    out.value("literal_agreements", res.literal_agreements);
    let sq = circ_square_verify(&tx, &ty, &res.twist, &ctx.limits)?;
    out.check("square_branch_matched", sq.matched());
    out.value("square_branch", sq.branch());
    out.value("square_plus_two", sq.plus_two.as_str());
    out.value("square_minus_two", sq.minus_two.as_str());
    out.value("square_exact_exponents", &sq.exact_exponents);
    Ok(out)
}

fn op_heisenberg_triangular(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let h = ctx.heisenberg(args.int("p"))?;
    let all = enumerate_triangular_structures(&h.group, &ctx.limits)?;
    let mut out = Outcome::default();
    out.value("count", all.len());
    out.check("skew_forms", all.iter().all(|t| t.form.is_skew_symmetric()));
    Ok(out)
}

fn op_skew(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let p = args.int("p");
    let h = ctx.heisenberg(p)?;
    let mut out = Outcome::default();
    let plane = Arc::new(FiniteGroup::abelian(&[h.p as u64, h.p as u64], ctx.limits.table_cap));
    let a = AbelianStructure::from_subgroup(&Subgroup::whole(&plane))?;
    let std = PairingForm::new(a.radix().clone(), vec![vec![0, 1], vec![-1, 0]])?;
    let tx = h.twist_x()?;
    for (label, a, form) in [("(Z/p)^2", &a, &std), ("heisenberg <x,c>", tx.structure(), tx.form())] {
        let rep = skew_group_algebra_iso_check(a, form)?;
        out.check(format!("{label}: rule holds"), rep.passed());
        out.value(format!("{label}: pairs_checked"), rep.pairs_checked);
    }
    Ok(out)
}

fn op_separation(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let limits = ctx.limits.clone();
    let mut out = Outcome::default();
    let cases: Vec<(String, TensorElement, FormTwist)> = match args.str("family") {
        "heisenberg" => {
            let h = ctx.heisenberg(args.int("p"))?;
            let one = TensorElement::one(&h.group);
            vec![("s0=1, F_x".into(), one.clone(), h.twist_x()?), ("s0=1, F_y".into(), one, h.twist_y()?)]
        }
        "quadratic" => {
            let q = ctx.quadratic(2)?;
            let s0 = coboundary_of_unit(&q.x, &limits)?;
            out.value("s0.flip_fixed", s0.flip() == s0);
            out.value("s0.invariant", invariance_check(&s0));
            let g = &q.asp.group;
            let omega = FormTwist::new(q.asp.dual.clone(), q.asp.beta.alternation())?;
            out.value("s0*F_(V*,Alt beta).flip_fixed", {
                let f = s0.mul(omega.realized());
                f.flip() == f
            });
            vec![("s0 from x, A trivial".into(), s0, FormTwist::trivial(g))]
        }
        other => return Err(OpError::Failed(format!("unknown family `{other}`; expected heisenberg or quadratic"))),
    };
    for (label, s0, t) in cases {
        let f = s0.mul(t.realized());
        let sep = separate_symmetric_antisymmetric(&f, &limits)?;
        out.check(format!("{label}: symmetric factor recovered"), sep.symmetric == s0);
        out.check(format!("{label}: anti-symmetric factor recovered"), sep.antisymmetric.realized() == t.realized());
        out.value(format!("{label}: form"), sep.antisymmetric.form().to_string());
    }
    Ok(out)
}

fn op_asp(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let a = ctx.asp(args.int("n"))?;
    let mut out = Outcome::default();
    out.value("order", a.group.order());
    out.value("dual_order", a.dual.order());
    out.check("dual_normal", a.dual.subgroup().is_normal());
    out.check("m_alternates_to_omega", a.m_alternates_to_omega());
    out.check("beta_alternation_invariant", a.beta_alternation_invariant()?);
    out.check("beta_nondegenerate", a.beta.is_nondegenerate());
    out.value("beta", a.beta.to_string());
    out.value("transvections", a.transvections.len());
    Ok(out)
}

fn op_metaplectic(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let n = args.int("n");
    let samples = dim(args.int("samples"))?;
    let a = ctx.asp(n)?;
    let lift = ctx.lift(n)?;
    let mut out = Outcome::default();
    out.check("solutions_valid", lift.solutions_valid());
    out.check("a_copy_equivariant", lift.a_copy_equivariant());
    out.value("quotient_order", lift.quotient.order());
    out.value("tilde_order", lift.tilde_order);
    out.value("kernel_order", lift.kernel_order);
    out.value("modulus", lift.modulus);
    let coverage = if lift.quotient.order() <= 512 {
        Coverage::Exhaustive
    } else {
        Coverage::Sampled { count: samples, seed: ctx.limits.seed }
    };
    let rep = twisted_homomorphism_check(&lift.hom, coverage, &ctx.limits);
    out.check("twisted_homomorphism", rep.passed());
    out.value("twisted_homomorphism.elements_checked", rep.elements_checked);
    out.value("twisted_homomorphism.pairs_checked", rep.pairs_checked);
    let differ = fingerprints_differ(&fingerprint(&a.group), &fingerprint(&lift.quotient));
    if a.n >= 4 {
        out.check("fingerprints_differ", differ);
    } else {
        out.value("fingerprints_differ", differ);
    }
    Ok(out)
}

fn op_quadratic(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let q = ctx.quadratic(args.int("n"))?;
    let mut out = Outcome::default();
    out.check("quadratic_form_valid", q.data.is_valid());
    out.check("commutator_realizes_psi", q.commutator_realizes_psi(&q.asp.transvections, &ctx.limits)?);
    out.check("transvection_formula", q.transvection_formula_holds());
    out.value("transvections_checked", q.asp.transvections.len());
    out.value("coboundary_feasible", q.coboundary_feasible);
    Ok(out)
}

/// Outcome of searching the H¹ detector's admissible classes for the class of ψ.
pub struct PsiClassSearch {
    pub classes: usize,
    pub oracle_classes: usize,
    pub admissible: usize,
    /// Index of the admissible class containing ψ and whether it is nontrivial.
    pub psi_class: Option<(usize, bool)>,
    /// x with [x,g] = ψ(g), rebuilt from that class's conjugator.
    pub x: Option<AlgebraElement>,
}

/// a ∈ A with ψ(g) = r(g) + a − g·a on all generators, in A coordinates.
fn coboundary_shift(a: &AbelianStructure, psi: &[Vec<u64>], rep: &[Vec<u64>]) -> Result<Option<Vec<u64>>, OpError> {
    let g = a.group();
    let radix = a.radix();
    let actions = g.generators().iter().map(|&s| a.conjugation_action(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(radix.iter().find(|shift| {
        actions.iter().enumerate().all(|(i, act)| {
            let delta = radix.add(shift, &radix.neg(&apply_action(radix, act, shift)));
            radix.add(&rep[i], &delta) == psi[i]
        })
    }))
}

pub fn quadratic_psi_class(q: &QuadraticExample, limits: &Limits) -> Result<PsiClassSearch, OpError> {
    let a = &q.asp.dual;
    let g = a.group();
    let report = h1_detector(a, limits)?;
    let oracle = h1_brute_force(a, limits)?;
    let coords = |x: usize| a.coords(x).expect("ψ takes values in V*");
    let psi_gens: Vec<Vec<u64>> = g.generators().iter().map(|&s| coords(q.psi_element(s))).collect();
    let mut found = None;
    for (i, class) in report.admissible.iter().enumerate() {
        if let Some(shift) = coboundary_shift(a, &psi_gens, &class.generator_images)? {
            let x = class.x.mul(&AlgebraElement::basis(g, a.element_at(&shift)));
            found = Some((i, !class.trivial, x));
            break;
        }
    }
    Ok(PsiClassSearch {
        classes: report.classes,
        oracle_classes: oracle.classes,
        admissible: report.admissible.len(),
        psi_class: found.as_ref().map(|(i, nt, _)| (*i, *nt)),
        x: found.map(|(_, _, x)| x),
    })
}

/// [x,g] = (1, ψ(g)) on every element of G.
pub fn realizes_psi_everywhere(q: &QuadraticExample, x: &AlgebraElement, limits: &Limits) -> Result<bool, OpError> {
    let g = &q.asp.group;
    let xinv = x.inverse_with(limits)?;
    Ok((0..g.order()).all(|h| {
        let comm = x.mul(&AlgebraElement::basis(g, h)).mul(&xinv).mul(&AlgebraElement::basis(g, g.inv(h)));
        comm == AlgebraElement::basis(g, q.psi_element(h))
    }))
}

fn op_quadratic_h1(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let q = ctx.quadratic(args.int("n"))?;
    let limits = ctx.limits.clone();
    let search = quadratic_psi_class(&q, &limits)?;
    let mut out = Outcome::default();
    out.value("classes", search.classes);
    out.value("admissible_classes", search.admissible);
    out.check("oracle_agrees", search.classes == search.oracle_classes);
    out.check("psi_class_found", search.psi_class.is_some());
    out.value("psi_class_nontrivial", search.psi_class.is_some_and(|(_, nt)| nt));
    if let Some(x) = &search.x {
        out.check("x_realizes_psi", realizes_psi_everywhere(&q, x, &limits)?);
        out.check("coboundary_of_x_invariant", invariance_check(&coboundary_of_unit(x, &limits)?));
    }
    out.check("example_x_coboundary_invariant", invariance_check(&coboundary_of_unit(&q.x, &limits)?));
    Ok(out)
}

fn op_m11cubic(ctx: &mut Ctx, _args: &Args) -> Result<Outcome, OpError> {
    let ex = f243_cubic_example(&ctx.limits)?;
    let mut out = Outcome::default();
    out.value("field_modulus", ex.data.field.modulus_string());
    out.value("epsilon_basis_rank", ex.basis_rank);
    out.check("cubic_data_valid", ex.data.is_valid());
    for (i, name) in ["r", "s", "t"].iter().enumerate() {
        out.check(format!("{name}_preserves_tau"), ex.tau_preserved[i]);
    }
    out.value("closure_order", ex.closure_order);
    out.value("stabilizer_closure_order", ex.stabilizer_closure_order);
    for (i, name) in ["r2", "s", "t"].iter().enumerate() {
        out.check(format!("{name}_stabilizes_c"), ex.c_stabilized[i]);
    }
    let lambda_forced_zero = ex.s_invariant_lambdas.len() == 1 && ex.s_invariant_lambdas[0].is_zero();
    out.check("lambda_forced_zero", lambda_forced_zero);
    out.check("witness_found", ex.witness.is_some());
    if let Some(w) = &ex.witness {
        out.value("witness", &w.coeffs);
    }
    out.value("coboundary_feasible", ex.coboundary_feasible);
    Ok(out)
}

fn op_lagrangian(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let p = u64::try_from(args.int("p")).map_err(|_| OpError::Failed("p must be positive".into()))?;
    let q = p * p;
    let g = Arc::new(FiniteGroup::abelian(&[q, q], ctx.limits.table_cap));
    let a = AbelianStructure::from_subgroup(&Subgroup::whole(&g))?;
    let form = PairingForm::new(a.radix().clone(), vec![vec![0, 1], vec![-1, 0]])?;
    let t = FormTwist::new(a, form.clone())?;
    let radix = form.radix();
    let mut out = Outcome::default();
    let pa = span(radix, &[vec![p, 0], vec![0, p]]);
    out.check("pA_lagrangian", form.is_lagrangian(&pa));
    let section = section_with_cocycle(&form, &pa)?;
    out.check("pA_extension_does_not_split", !section.extension_splits(radix));
    out.check("pA_cocycle_identity", section.cocycle_identity_holds(radix));
    out.check("pA_twlag_reproduces_twist", twlag_element(&t, &section)? == *t.realized());
    let dec = lagrangian_decomposition(&form)?;
    out.check("decomposition_valid", dec.verify(&form));
    out.value("decomposition_b_radix", dec.b_radix.divisors());
    let b = dec.b_members(radix);
    let section = section_with_cocycle(&form, &b)?;
    out.check("decomposition_twlag_reproduces_twist", twlag_element(&t, &section)? == *t.realized());
    Ok(out)
}

fn op_mcc(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let n = u64::try_from(args.int("n")).map_err(|_| OpError::Failed("n must be positive".into()))?;
    let limits = ctx.limits.clone();
    let c = abelian_structure(&[n], &limits)?;
    let tri = triform_from_fn(&c, |x, y, z| x[0] * y[0] % n * z[0]);
    let m = mcc_group(&tri, None, &limits)?;
    let mut out = Outcome::default();
    out.value("order", m.group.order());
    for (label, t) in [("t1", &m.t1), ("t2", &m.t2)] {
        drinfeld_into(&mut out, &format!("{label}."), &drinfeld_conditions_check(t.realized(), &limits));
        out.check(format!("{label}.invariant"), invariance_check(t.realized()));
    }
    let b = commutator_subgroup(&m.t1, &m.t2)?;
    out.check("commutator_subgroup_is_center_part", sorted_members(&b) == sorted_members(&m.center_part));
    out.check("commutator_formula", commutator_formula_check(&m.t1, &m.t2, &limits)?);
    let cc = triform_c(&m.t1, &m.t2)?;
    out.value("c.trivial", cc.is_trivial());
    let j = commutator_twist(&m.t1, &m.t2, &limits)?;
    let u = solve_u(&cc)?;
    let rep = check_u(&u, &cc, &j, &limits)?;
    out.check("solve_u.coboundary_matches_commutator", rep.coboundary_matches_commutator);
    out.check("solve_u.invariant", rep.invariant);
    out.check("solve_u.pair_identity_coboundary", rep.pair_identity_coboundary);
    out.value("solve_u.pair_identity_displayed", rep.pair_identity_displayed);
    Ok(out)
}

fn nontrivial_forms(
    g: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Vec<(AbelianStructure, PairingForm)>, OpError> {
    let mut out = Vec::new();
    for sub in enumerate_normal_abelian_subgroups(g, limits.enum_cap)? {
        if sub.is_trivial() {
            continue;
        }
        let a = AbelianStructure::from_subgroup(&sub)?;
        let invariant_under = g.generators().iter().map(|&s| a.conjugation_action(s)).collect::<Result<Vec<_>, _>>()?;
        let req = FormRequirements { alternating: true, skew_symmetric: false, nondegenerate: true, invariant_under };
        for f in enumerate_invariant_forms(a.radix(), &req, limits.enum_cap)? {
            out.push((a.clone(), f));
        }
    }
    Ok(out)
}

fn op_enumerate(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let g = ctx.arg_group(args, "group")?;
    let limits = ctx.limits.clone();
    let mut out = Outcome::default();
    out.value("group_order", g.order());
    let listing: Vec<Value> = match args.str("what") {
        "normal-abelian" => enumerate_normal_abelian_subgroups(&g, limits.enum_cap)?
            .into_iter()
            .filter(|s| !s.is_trivial())
            .map(|s| json!({ "order": s.order(), "members": s.members() }))
            .collect(),
        "forms" => nontrivial_forms(&g, &limits)?
            .into_iter()
            .map(|(a, f)| json!({ "subgroup": sorted_members(&a), "generators": a.generators(), "form": f.to_string() }))
            .collect(),
        "twists" => {
            let mut items = Vec::new();
            for (a, f) in nontrivial_forms(&g, &limits)? {
                let t = FormTwist::new(a, f)?;
                let rep = drinfeld_conditions_check(t.realized(), &limits);
                out.check(format!("twist {} on {:?}: axioms", t.form(), t.structure().generators()), rep.all_passed());
                items.push(json!({
                    "generators": t.structure().generators(),
                    "form": t.form().to_string(),
                    "nnz": t.realized().nnz(),
                    "sha256": digest(t.realized()),
                }));
            }
            items
        }
        "triangular" => enumerate_triangular_structures(&g, &limits)?
            .into_iter()
            .filter(|t| t.structure.order() > 1)
            .map(|t| json!({ "subgroup": sorted_members(&t.structure), "generators": t.structure.generators(), "form": t.form.to_string() }))
            .collect(),
        other => {
            return Err(OpError::Failed(format!(
                "unknown listing `{other}`; expected normal-abelian, forms, triangular or twists"
            )))
        }
    };
    out.value("count", listing.len());
    out.value("items", listing);
    Ok(out)
}

fn twist_summary(out: &mut Outcome, prefix: &str, t: &FormTwist, limits: &Limits) {
    let f = t.realized();
    drinfeld_into(out, prefix, &drinfeld_conditions_check(f, limits));
    let flags = t.form().flags(None);
    out.value(format!("{prefix}invariant"), invariance_check(f));
    out.value(format!("{prefix}antisymmetric"), is_antisymmetric(f));
    out.value(format!("{prefix}form.alternating"), flags.alternating);
    out.value(format!("{prefix}form.nondegenerate"), flags.nondegenerate);
    out.value(format!("{prefix}form"), t.form().to_string());
    out.value(format!("{prefix}subgroup"), sorted_members(t.structure()));
    out.value(format!("{prefix}nnz"), f.nnz());
    out.value(format!("{prefix}sha256"), digest(f));
}

fn op_twist_verify(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let g = ctx.arg_group(args, "group")?;
    let (name, t) = ctx.arg_twist(args, "twist", Some(&g))?;
    let mut out = Outcome::default();
    out.value("twist", name);
    out.value("group_order", g.order());
    twist_summary(&mut out, "", &t, &ctx.limits);
    Ok(out)
}

fn twist_pair(ctx: &mut Ctx, args: &Args) -> Result<(String, FormTwist, String, FormTwist), OpError> {
    let (n1, t1) = ctx.arg_twist(args, "first", None)?;
    let (n2, t2) = ctx.arg_twist(args, "second", None)?;
    if t1.group().order() != t2.group().order() || !Arc::ptr_eq(t1.group(), t2.group()) {
        return Err(OpError::Failed(format!("twists {n1} and {n2} live on different groups")));
    }
    Ok((n1, t1, n2, t2))
}

fn op_twist_compose(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let (n1, t1, n2, t2) = twist_pair(ctx, args)?;
    let limits = ctx.limits.clone();
    let mut out = Outcome::default();
    out.value("first", n1);
    out.value("second", n2);
    let product = t1.realized().mul(t2.realized());
    let rep = drinfeld_conditions_check(&product, &limits);
    out.value("product.is_twist", rep.all_passed());
    out.value("product.cocycle_status", rep.cocycle.as_str());
    out.value("product.nnz", product.nnz());
    out.value("product.sha256", digest(&product));
    let res = circ_with_samples(&t1, &t2, 100, limits.seed)?;
    out.check("circ.alternating", res.flags.alternating);
    out.check("circ.invariant", res.flags.invariant != Some(false));
    out.value("circ.nondegenerate", res.flags.nondegenerate);
    out.value("circ.form", res.twist.form().to_string());
    out.value("circ.subgroup", sorted_members(res.twist.structure()));
    out.value("circ.samples_checked", res.samples_checked);
    let sq = circ_square_verify(&t1, &t2, &res.twist, &limits)?;
    out.check("circ.square_branch_matched", sq.matched());
    out.value("circ.square_branch", sq.branch());
    Ok(out)
}

fn op_twist_commutator(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let (n1, t1, n2, t2) = twist_pair(ctx, args)?;
    let limits = ctx.limits.clone();
    let mut out = Outcome::default();
    out.value("first", n1);
    out.value("second", n2);
    let j = commutator_twist(&t1, &t2, &limits)?;
    out.value("commutator.nnz", j.nnz());
    out.value("commutator.sha256", digest(&j));
    out.value("commutator.trivial", j == TensorElement::one(t1.group()));
    let b = commutator_subgroup(&t1, &t2)?;
    out.value("commutator_subgroup", sorted_members(&b));
    out.check("commutator_formula", commutator_formula_check(&t1, &t2, &limits)?);
    let c = triform_c(&t1, &t2)?;
    out.value("c.trivial", c.is_trivial());
    match solve_u(&c) {
        Ok(u) => {
            let rep = check_u(&u, &c, &j, &limits)?;
            out.check("solve_u.coboundary_matches_commutator", rep.coboundary_matches_commutator);
            out.check("solve_u.invariant", rep.invariant);
            out.value("solve_u.pair_identity_coboundary", rep.pair_identity_coboundary);
            out.value("solve_u.pair_identity_displayed", rep.pair_identity_displayed);
        }
        Err(e) if !e.is_internal() => {
            out.value("solve_u.skipped", e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

fn op_classpreserving(ctx: &mut Ctx, args: &Args) -> Result<Outcome, OpError> {
    let g = ctx.arg_group(args, "group")?;
    let auts = automorphism_group(&g, ctx.limits.aut_cap)?;
    let cp = class_preserving_filter(&auts, &g);
    let mut out = Outcome::default();
    out.value("group_order", g.order());
    out.value("aut_order", cp.aut_order);
    out.value("aut_cl_order", cp.aut_cl_order);
    out.value("inn_order", cp.inn_order);
    out.value("out_cl_order", cp.out_cl_order);
    out.check("inner_are_class_preserving", cp.aut_cl_order.is_multiple_of(cp.inn_order.max(1)));
    out.check("all_homomorphisms", cp.class_preserving.iter().all(|f| f.is_bijective()));
    Ok(out)
}

/// Resolve `path` against the directory a scenario was read from.
pub fn base_dir(path: Option<&Path>) -> PathBuf {
    path.and_then(Path::parent).map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}
