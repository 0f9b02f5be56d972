use proptest::prelude::*;
use twistlab_constructions::ffield::solve_mod_p;
use twistlab_constructions::FiniteField;

fn f243() -> FiniteField {
    FiniteField::new(3, 5).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in 0usize..243, b in 0usize..243, c in 0usize..243) {
        let f = f243();
        let (a, b, c) = (f.element(a), f.element(b), f.element(c));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert!(f.add(&a, &f.neg(&a)).is_zero());
    }

    #[test]
    fn inverses_and_frobenius(a in 1usize..243, b in 0usize..243) {
        let f = f243();
        let (a, b) = (f.element(a), f.element(b));
        prop_assert!(f.mul(&a, &f.inverse(&a).unwrap()).is_one());
        prop_assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.pow(&a, 242), f.one());
        prop_assert_eq!(242 % f.multiplicative_order(&a), 0);
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant(a in 0usize..243, b in 0usize..243, k in 0u32..3) {
        let f = f243();
        let (a, b) = (f.element(a), f.element(b));
        prop_assert_eq!(f.trace(&f.add(&a, &b)), (f.trace(&a) + f.trace(&b)) % 3);
        prop_assert_eq!(f.trace(&f.frobenius(&a)), f.trace(&a));
        prop_assert_eq!(f.trace(&f.scale(&a, k)), f.trace(&a) * k % 3);
    }

    #[test]
    fn solutions_satisfy_the_system(rows in prop::collection::vec(prop::collection::vec(0u32..5, 3), 1..6), x in prop::collection::vec(0u32..5, 3)) {
        let b: Vec<u32> = rows.iter().map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum::<u32>() % 5).collect();
        let sol = solve_mod_p(&rows, &b, 5).expect("consistent by construction");
        for (r, want) in rows.iter().zip(&b) {
            prop_assert_eq!(r.iter().zip(&sol).map(|(a, v)| a * v).sum::<u32>() % 5, *want);
        }
    }
}

#[test]
fn index_roundtrip_and_generator() {
    let f = f243();
    for i in 0..243 {
        assert_eq!(f.index(&f.element(i)), i);
    }
    assert_eq!(f.multiplicative_order(&f.generator()), 242);
}
