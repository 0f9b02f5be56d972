use twistlab_constructions::{abelian_structure, mcc_group, triform_from_fn};
use twistlab_core::commutator::{check_u, commutator_formula_check, commutator_subgroup, commutator_twist, solve_u, triform_c};
use twistlab_core::hopf::drinfeld_conditions_check;
use twistlab_core::Limits;
use twistlab_groups::center;

#[test]
fn mcc_of_xyz_on_z5() {
    let limits = Limits::default();
    let c5 = abelian_structure(&[5], &limits).unwrap();
    let c = triform_from_fn(&c5, |x, y, z| x[0] * y[0] * z[0]);
    let m = mcc_group(&c, None, &limits).unwrap();
    assert_eq!(m.group.order(), 125);
    assert_eq!(center(&m.group).len(), 5);
    for t in [&m.t1, &m.t2] {
        assert!(drinfeld_conditions_check(t.realized(), &limits).all_passed());
        assert!(t.form().flags(None).nondegenerate);
    }
    let b = commutator_subgroup(&m.t1, &m.t2).unwrap();
    let mut want = m.center_part.elements().to_vec();
    want.sort_unstable();
    let mut got = b.elements().to_vec();
    got.sort_unstable();
    assert_eq!(got, want);
    let tri = triform_c(&m.t1, &m.t2).unwrap();
    assert!(!tri.is_trivial());
    assert!(tri.is_symmetric() && tri.is_trimultiplicative());
    assert!(commutator_formula_check(&m.t1, &m.t2, &limits).unwrap());
    let j = commutator_twist(&m.t1, &m.t2, &limits).unwrap();
    let u = solve_u(&tri).unwrap();
    let rep = check_u(&u, &tri, &j, &limits).unwrap();
    assert!(rep.coboundary_matches_commutator && rep.invariant);
}

#[test]
fn trivial_c_gives_an_abelian_group() {
    let limits = Limits::default();
    let c5 = abelian_structure(&[5], &limits).unwrap();
    let c = triform_from_fn(&c5, |_, _, _| 0);
    let m = mcc_group(&c, None, &limits).unwrap();
    assert_eq!(m.group.order(), 125);
    assert_eq!(center(&m.group).len(), 125);
    let j = commutator_twist(&m.t1, &m.t2, &limits).unwrap();
    assert_eq!(j, twistlab_core::TensorElement::one(&m.group));
}

#[test]
fn extension_by_automorphisms_preserving_c() {
    let limits = Limits::default();
    let c7 = abelian_structure(&[7], &limits).unwrap();
    let c = triform_from_fn(&c7, |x, y, z| x[0] * y[0] * z[0]);
    // x ↦ 2x preserves xyz since 2³ = 1 mod 7
    let m = mcc_group(&c, Some(&[vec![vec![2]]]), &limits).unwrap();
    assert_eq!(m.group.order(), 343 * 3);
    assert!(commutator_formula_check(&m.t1, &m.t2, &limits).unwrap());
    // x ↦ 3x does not
    assert!(mcc_group(&c, Some(&[vec![vec![3]]]), &limits).is_err());
}

#[test]
fn rejects_forms_that_are_not_trimultiplicative() {
    let limits = Limits::default();
    let c5 = abelian_structure(&[5], &limits).unwrap();
    let bad = triform_from_fn(&c5, |x, y, z| x[0] + y[0] + z[0]);
    assert!(mcc_group(&bad, None, &limits).is_err());
}
