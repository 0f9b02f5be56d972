mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twistlab_core::cocycle::{coboundary, trivialize_symmetric_cocycle, Cochain1, CochainTable};
use twistlab_core::hopf::{coboundary_of_unit, drinfeld_conditions_check, invariance_check};
use twistlab_core::lagrangian::{lagrangian_decomposition, section_with_cocycle};
use twistlab_core::twist::{is_antisymmetric, twlag_element};
use twistlab_core::{AbelianStructure, FormTwist, Limits, PairingForm, Presentation, Radix};
use twistlab_cyclo::Cyclotomic;
use twistlab_groups::{FiniteGroup, Subgroup};

fn whole(divisors: &[u64]) -> AbelianStructure {
    let g = Arc::new(FiniteGroup::abelian(divisors, 1024));
    AbelianStructure::from_subgroup(&Subgroup::whole(&g)).unwrap()
}

fn matrix(r: usize, max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..max, r), r)
}

/// Alternating exponent matrix from the strictly upper entries of m.
fn alternating(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = m.len();
    (0..r).map(|i| (0..r).map(|j| if i < j { m[i][j] } else if i > j { -m[j][i] } else { 0 }).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn alternation_laws(m in matrix(3, 9)) {
        let f = PairingForm::new(Radix::new(vec![9, 9, 9]), m).unwrap();
        let alt = f.alternation();
        prop_assert!(alt.is_alternating());
        prop_assert_eq!(alt.alternation(), alt.pow(2));
        let beta = alt.alt_inverse_odd().unwrap();
        prop_assert_eq!(beta.alternation(), alt);
    }

    #[test]
    fn twist_axioms_presentations_and_antisymmetry(m in matrix(2, 5)) {
        let a = whole(&[5, 5]);
        let f = PairingForm::new(a.radix().clone(), m).unwrap();
        prop_assume!(f.is_nondegenerate());
        let t = FormTwist::new(a, f.clone()).unwrap();
        let r = t.realized();
        prop_assert!(drinfeld_conditions_check(r, &Limits::default()).all_passed());
        prop_assert!(invariance_check(r));
        prop_assert_eq!(t.realize(Presentation::GroupSum).unwrap(), t.realize(Presentation::Idempotent).unwrap());
        prop_assert_eq!(is_antisymmetric(r), f.is_alternating());
    }

    #[test]
    fn degenerate_group_sums_are_not_invertible(k in 0i64..5) {
        let a = whole(&[5, 5]);
        let f = PairingForm::new(a.radix().clone(), vec![vec![k, 0], vec![0, 0]]).unwrap();
        let t = FormTwist::new(a, f).unwrap();
        prop_assert!(!drinfeld_conditions_check(t.realized(), &Limits::default()).invertible);
    }

    #[test]
    fn adjoint_is_involutive_up_to_identification(m in matrix(2, 25), k in 1i64..25) {
        let f = PairingForm::new(Radix::new(vec![25, 25]), alternating(&m)).unwrap();
        // make it nondegenerate by adding a unit multiple of the standard form
        let std = PairingForm::new(Radix::new(vec![25, 25]), vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let f = if f.is_nondegenerate() { f } else { std.pow(if k % 5 == 0 { 1 } else { k }) };
        let b = f.adjoint_dual_form().unwrap();
        let radix = f.radix();
        for x in radix.iter() {
            for y in radix.iter().step_by(7) {
                prop_assert_eq!(b.exp(&f.left_adjoint(&x), &f.left_adjoint(&y)), f.exp(&y, &x));
            }
        }
        // x ↦ b(β(x,·),·) identifies A with its double dual
        let bb = b.adjoint_dual_form().unwrap();
        let images: Vec<Vec<u64>> = (0..2).map(|i| b.left_adjoint(&f.left_adjoint(&radix.unit(i)))).collect();
        prop_assert_eq!(bb.pullback(&images), f);
    }

    #[test]
    fn lagrangian_decomposition_is_valid(m in matrix(4, 3)) {
        let f = PairingForm::new(Radix::new(vec![3, 3, 3, 3]), alternating(&m)).unwrap();
        prop_assume!(f.is_nondegenerate());
        let dec = lagrangian_decomposition(&f).unwrap();
        let b = dec.b_members(f.radix());
        prop_assert_eq!(b.len() * b.len(), 81);
        prop_assert!(f.is_lagrangian(&b));
        prop_assert!(dec.verify(&f));
    }

    #[test]
    fn trivialize_inverts_coboundary(values in prop::collection::vec(0u64..10, 25)) {
        let radix = Radix::new(vec![5, 5]);
        let mut values = values;
        values[0] = 0;
        let v = Cochain1 { modulus: 10, values };
        let e = coboundary(&radix, &v);
        let u = trivialize_symmetric_cocycle(&e, false).unwrap();
        prop_assert!(e.is_trivialized_by(&u));
        prop_assert_eq!(coboundary(&radix, &u), e);
    }

    #[test]
    fn symmetric_forms_trivialize(m in matrix(2, 9)) {
        let radix = Radix::new(vec![9, 9]);
        let sym: Vec<Vec<i64>> = (0..2).map(|i| (0..2).map(|j| m[i.min(j)][i.max(j)]).collect()).collect();
        let f = PairingForm::new(radix.clone(), sym).unwrap();
        let e = CochainTable::from_fn(radix, 9, |x, y| f.exp(x, y));
        let u = trivialize_symmetric_cocycle(&e, true).unwrap();
        prop_assert!(e.is_trivialized_by(&u));
    }

    #[test]
    fn twlag_reproduces_the_twist(k in 1i64..25) {
        prop_assume!(k % 5 != 0);
        let a = whole(&[25, 25]);
        let f = PairingForm::new(a.radix().clone(), vec![vec![0, k], vec![-k, 0]]).unwrap();
        let t = FormTwist::new(a, f.clone()).unwrap();
        for gens in [vec![vec![1u64, 0]], vec![vec![5, 0], vec![0, 5]]] {
            let b = twistlab_core::lagrangian::span(f.radix(), &gens);
            let s = section_with_cocycle(&f, &b).unwrap();
            prop_assert_eq!(&twlag_element(&t, &s).unwrap(), t.realized());
        }
    }

    #[test]
    fn coboundaries_of_units_are_twists(ks in prop::collection::vec(0i64..5, 5)) {
        let g = common::heisenberg(5);
        let z = AbelianStructure::with_generators(&Subgroup::generated(&g, &[common::C]), &[common::C]).unwrap();
        let values: Vec<Cyclotomic> = ks.iter().map(|&k| Cyclotomic::root(5, k)).collect();
        let u = twistlab_core::twist::from_dual_values(&z, &values);
        let u = u.scale(&u.counit().inv().unwrap());
        prop_assert_eq!(u.counit(), Cyclotomic::one(5));
        let f = coboundary_of_unit(&u, &Limits::default()).unwrap();
        prop_assert!(drinfeld_conditions_check(&f, &Limits::default()).all_passed());
        prop_assert!(f.flip() == f);
    }
}
