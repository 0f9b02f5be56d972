mod common;

use common::{heisenberg, standard_twist, C, X, Y};
use twistlab_core::circ::{circ, circ_square_verify, SquareMatch};
use twistlab_core::commutator::{
    check_u, commutator_formula_check, commutator_twist, cube_root_u, solve_u, triform_c,
};
use twistlab_core::hopf::{drinfeld_conditions_check, invariance_check};
use twistlab_core::twist::is_antisymmetric;
use twistlab_core::{Limits, Presentation};

#[test]
fn standard_twists_are_invariant_antisymmetric_twists() {
    let g = heisenberg(5);
    let limits = Limits::default();
    for gen in [X, Y] {
        let t = standard_twist(&g, gen);
        let f = t.realized();
        assert!(drinfeld_conditions_check(f, &limits).all_passed());
        assert!(invariance_check(f));
        assert!(is_antisymmetric(f));
        assert_eq!(t.realize(Presentation::Idempotent).unwrap(), *f);
    }
}

#[test]
fn commutator_matches_c_formula() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let (tx, ty) = (standard_twist(&g, X), standard_twist(&g, Y));
    let c = triform_c(&tx, &ty).unwrap();
    assert_eq!(c.base.elements(), &[0, C, 2, 3, 4]);
    assert!(c.is_symmetric());
    assert!(c.is_trimultiplicative());
    assert!(!c.is_trivial());
    assert!(commutator_formula_check(&tx, &ty, &limits).unwrap());
}

#[test]
fn commutator_of_twist_with_itself_is_trivial() {
    let g = heisenberg(5);
    let tx = standard_twist(&g, X);
    let j = commutator_twist(&tx, &tx, &Limits::default()).unwrap();
    assert_eq!(j, twistlab_core::TensorElement::one(&g));
}

#[test]
fn u_solve_postconditions() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let (tx, ty) = (standard_twist(&g, X), standard_twist(&g, Y));
    let c = triform_c(&tx, &ty).unwrap();
    let j = commutator_twist(&tx, &ty, &limits).unwrap();
    let u = solve_u(&c).unwrap();
    let rep = check_u(&u, &c, &j, &limits).unwrap();
    assert!(rep.coboundary_matches_commutator);
    assert!(rep.pair_identity_coboundary);
    assert!(rep.invariant);
    assert!(!rep.pair_identity_displayed);
    let literal = cube_root_u(&c).unwrap();
    let rep = check_u(&literal, &c, &j, &limits).unwrap();
    assert!(rep.pair_identity_displayed);
    assert!(!rep.coboundary_matches_commutator);
}

#[test]
fn circ_of_heisenberg_pair() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let (tx, ty) = (standard_twist(&g, X), standard_twist(&g, Y));
    let res = circ(&tx, &ty, &limits).unwrap();
    assert!(res.flags.alternating && res.flags.nondegenerate && res.flags.invariant == Some(true));
    assert_eq!(res.twist.structure().order(), 25);
    let rep = circ_square_verify(&tx, &ty, &res.twist, &limits).unwrap();
    assert_eq!(rep.minus_two, SquareMatch::Exact);
    assert_eq!(rep.plus_two, SquareMatch::Neither);
    assert_eq!(rep.branch(), "-2");
    assert!(!res.literal_bimultiplicative);
    assert_eq!(res.literal_agreements, 325);
    assert_eq!(res.samples_checked, 100);
    let mut members = res.twist.structure().subgroup().members().to_vec();
    members.sort_unstable();
    let expected: Vec<usize> = (0..5).flat_map(|i| (0..5).map(move |c| 30 * i + c)).collect();
    assert_eq!(members, expected);
}

#[test]
fn circ_with_itself_halves_the_form() {
    let g = heisenberg(5);
    let limits = Limits::default();
    let tx = standard_twist(&g, X);
    let res = circ(&tx, &tx, &limits).unwrap();
    assert_eq!(res.twist.structure(), tx.structure());
    assert_eq!(*res.twist.form(), tx.form().pow(3));
    let triv = twistlab_core::FormTwist::trivial(&g);
    let res = circ(&tx, &triv, &limits).unwrap();
    assert_eq!(res.twist, tx);
    let rep = circ_square_verify(&tx, &triv, &res.twist, &limits).unwrap();
    assert_eq!(rep.exact_exponents, vec![3]);
    assert_eq!(rep.minus_two, SquareMatch::Exact);
}
