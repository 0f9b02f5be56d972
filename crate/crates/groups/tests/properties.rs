use std::sync::Arc;

use proptest::prelude::*;
use twistlab_groups::*;

fn arb_perm(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

fn arb_group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    (2usize..=5).prop_flat_map(|d| prop::collection::vec(arb_perm(d), 1..=2)).prop_map(|perms| {
        let degree = perms[0].len();
        let gens: Vec<Vec<u8>> = perms.iter().map(|p| PermutationRule::encode(p)).collect();
        Arc::new(FiniteGroup::closure("P", Arc::new(PermutationRule { degree }), &gens, 1000, 512).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms_hold(g in arb_group()) {
        g.check_associativity(0, 0).unwrap();
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn classes_partition_and_divide(g in arb_group()) {
        let classes = conjugacy_classes(&g);
        let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
        all.sort();
        prop_assert_eq!(all, (0..g.order()).collect::<Vec<_>>());
        for c in classes {
            prop_assert_eq!(g.order() % c.len(), 0);
        }
        let firsts: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        prop_assert_eq!(firsts, sorted);
    }

    #[test]
    fn normal_abelian_subgroups_are_invariant(g in arb_group()) {
        for s in enumerate_normal_abelian_subgroups(&g, 512).unwrap() {
            for &x in s.members() {
                for y in 0..g.order() {
                    prop_assert!(s.contains(g.conj(y, x)));
                }
                for &z in s.members() {
                    prop_assert_eq!(g.mul(x, z), g.mul(z, x));
                }
            }
        }
    }

    #[test]
    fn inner_automorphisms_are_class_preserving(g in arb_group()) {
        let auts = automorphism_group(&g, 512).unwrap();
        let cp = class_preserving_filter(&auts, &g);
        for inn in &cp.inner {
            prop_assert!(auts.contains(inn));
            prop_assert!(cp.class_preserving.contains(inn));
        }
        prop_assert_eq!(cp.aut_cl_order % cp.inn_order, 0);
    }
}
