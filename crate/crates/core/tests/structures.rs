mod common;

use std::sync::Arc;

use common::{heisenberg, standard_twist, C, X, Y};
use twistlab_core::classpres::{find_conjugator, h1_brute_force, h1_detector, symmetric_twist_of};
use twistlab_core::separation::separate_symmetric_antisymmetric;
use twistlab_core::skew::{skew_group_algebra_iso_check, skew_rule_check};
use twistlab_core::triangular::enumerate_triangular_structures;
use twistlab_core::{AbelianStructure, Limits, PairingForm, TensorElement};
use twistlab_groups::{FiniteGroup, GroupMorphism, Subgroup};

fn z5sq() -> AbelianStructure {
    let g = Arc::new(FiniteGroup::abelian(&[5, 5], 512));
    AbelianStructure::from_subgroup(&Subgroup::whole(&g)).unwrap()
}

#[test]
fn skew_rule_on_z5_squared() {
    let a = z5sq();
    let std = PairingForm::new(a.radix().clone(), vec![vec![0, 1], vec![-1, 0]]).unwrap();
    let rep = skew_group_algebra_iso_check(&a, &std).unwrap();
    assert_eq!(rep.pairs_checked, 625);
    assert!(rep.passed(), "{rep:?}");
    let triv = PairingForm::trivial(a.radix().clone());
    assert!(skew_group_algebra_iso_check(&a, &triv).is_err());
    let rep = skew_rule_check(&a, &TensorElement::one(a.group())).unwrap();
    assert!(rep.passed());
}

#[test]
fn skew_rule_on_heisenberg_subgroup() {
    let g = heisenberg(5);
    let t = standard_twist(&g, X);
    let rep = skew_group_algebra_iso_check(t.structure(), t.form()).unwrap();
    assert!(rep.passed());
}

#[test]
fn triangular_structures_on_heisenberg() {
    let g = heisenberg(5);
    let all = enumerate_triangular_structures(&g, &Limits::default()).unwrap();
    assert_eq!(all.len(), 25);
    assert_eq!(all.iter().filter(|t| t.structure.order() == 1).count(), 1);
    assert!(all.iter().skip(1).all(|t| t.structure.order() == 25 && t.form.is_nondegenerate()));
}

#[test]
fn cyclic_group_has_only_the_trivial_triangular_structure() {
    let g = Arc::new(FiniteGroup::abelian(&[15], 512));
    let all = enumerate_triangular_structures(&g, &Limits::default()).unwrap();
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].structure.order(), 1);
}

#[test]
fn separation_of_an_antisymmetric_twist() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let t = standard_twist(&g, Y);
    let sep = separate_symmetric_antisymmetric(t.realized(), &limits).unwrap();
    assert_eq!(sep.symmetric, TensorElement::one(&g));
    assert_eq!(sep.antisymmetric.realized(), t.realized());
}

#[test]
fn separation_of_a_symmetric_times_antisymmetric_product() {
    let g = heisenberg(5);
    let limits = Limits::default();
    // s0 = coboundary of a central unit: flip-fixed and invariant
    let center = AbelianStructure::with_generators(&Subgroup::generated(&g, &[C]), &[C]).unwrap();
    let u = twistlab_core::twist::from_dual_values(
        &center,
        &(0..5).map(|k| twistlab_cyclo::Cyclotomic::root(5, (k * k * k) as i64)).collect::<Vec<_>>(),
    );
    let s0 = twistlab_core::hopf::coboundary_of_unit(&u, &limits).unwrap();
    assert_ne!(s0, TensorElement::one(&g));
    let t = standard_twist(&g, X);
    let f = s0.mul(t.realized());
    let sep = separate_symmetric_antisymmetric(&f, &limits).unwrap();
    assert_eq!(sep.symmetric, s0);
    assert_eq!(sep.antisymmetric.realized(), t.realized());
}

#[test]
fn conjugators_of_inner_and_identity() {
    let g = heisenberg(5);
    let limits = Limits::default();
    for by in [0, X, Y + C] {
        let phi = GroupMorphism::inner(&g, by);
        let x = find_conjugator(&phi, None, &limits).unwrap();
        assert!(x.dimension >= 1);
        assert_eq!(x.verified_on, 125);
        assert_eq!(x.element.mul(&x.inverse), twistlab_core::AlgebraElement::one(&g));
    }
    let t = symmetric_twist_of(&GroupMorphism::identity(&g), None, &limits).unwrap();
    assert!(t.flip() == t);
}

#[test]
fn h1_with_central_subgroup_has_only_trivial_admissible_class() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let center = AbelianStructure::with_generators(&Subgroup::generated(&g, &[C]), &[C]).unwrap();
    let rep = h1_detector(&center, &limits).unwrap();
    assert_eq!(rep.classes, 25);
    assert_eq!(rep.admissible.len(), 1);
    assert!(rep.admissible[0].trivial);
    let oracle = h1_brute_force(&center, &limits).unwrap();
    assert_eq!(oracle.classes, rep.classes);
    assert_eq!(oracle.admissible_classes, 1);
    assert_eq!(oracle.cocycles, rep.cocycles);
}

#[test]
fn h1_on_a_noncentral_subgroup_matches_oracle() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let a = standard_twist(&g, X).structure().clone();
    let rep = h1_detector(&a, &limits).unwrap();
    let oracle = h1_brute_force(&a, &limits).unwrap();
    assert_eq!((oracle.cocycles, oracle.coboundaries, oracle.classes), (rep.cocycles, rep.coboundaries, rep.classes));
    assert_eq!(oracle.admissible_classes, rep.admissible.len());
    assert!(rep.admissible.iter().all(|c| c.coboundary_invariant));
}
