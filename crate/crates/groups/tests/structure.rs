use std::sync::Arc;

use twistlab_groups::*;

fn unipotent(p: u8) -> Arc<FiniteGroup> {
    let rule = Arc::new(MatrixRule { p, dim: 3 });
    let e12 = vec![1, 1, 0, 0, 1, 0, 0, 0, 1];
    let e23 = vec![1, 0, 0, 0, 1, 1, 0, 0, 1];
    Arc::new(FiniteGroup::closure("U3", rule, &[e12, e23], DEFAULT_CLOSURE_CAP, DEFAULT_TABLE_CAP).unwrap())
}

fn perm_group(text: &str) -> Arc<FiniteGroup> {
    let spec = parse_group_spec(text).unwrap();
    Arc::new(spec.build_basic(DEFAULT_CLOSURE_CAP, DEFAULT_TABLE_CAP).unwrap().unwrap())
}

#[test]
fn three_cycle_generates_cyclic_group() {
    let g = perm_group("group C3\nperm (1,2,3)\n");
    assert_eq!(g.order(), 3);
    assert!(g.is_abelian());
}

#[test]
fn unipotent_matrices_over_f5() {
    let g = unipotent(5);
    assert_eq!(g.order(), 125);
    assert!(g.has_table());
    assert_eq!(conjugacy_classes(&g).len(), 29);
    assert_eq!(center(&g).len(), 5);
}

#[test]
fn heisenberg_normal_abelian_subgroups() {
    let g = unipotent(5);
    let subs = enumerate_normal_abelian_subgroups(&g, 512).unwrap();
    let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
    assert_eq!(orders, vec![1, 5, 25, 25, 25, 25, 25, 25]);
    for s in &subs {
        assert!(s.is_normal() && s.is_abelian());
        for &x in s.members() {
            for &gen in g.generators() {
                assert!(s.contains(g.conj(gen, x)));
            }
        }
    }
}

#[test]
fn abelian_group_subgroups_are_all_normal_abelian() {
    // Z/2 x Z/4 has 8 subgroups
    let g = Arc::new(FiniteGroup::abelian(&[2, 4], 512));
    assert_eq!(enumerate_normal_abelian_subgroups(&g, 512).unwrap().len(), 8);
}

#[test]
fn automorphism_counts() {
    let z5 = Arc::new(FiniteGroup::abelian(&[5], 512));
    assert_eq!(automorphism_group(&z5, 512).unwrap().len(), 4);
    let z33 = Arc::new(FiniteGroup::abelian(&[3, 3], 512));
    assert_eq!(automorphism_group(&z33, 512).unwrap().len(), 48);
}

#[test]
fn heisenberg_automorphisms_match_commuting_pair_oracle() {
    let g = unipotent(5);
    let auts = automorphism_group(&g, 512).unwrap();
    // x, y may go to any non-commuting pair; commuting pairs number |G|·k(G)
    let n = g.order();
    let commuting = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| g.mul(a, b) == g.mul(b, a)).count();
    assert_eq!(commuting, n * conjugacy_classes(&g).len());
    assert_eq!(auts.len(), n * n - commuting);
    assert_eq!(auts.len(), 12000);
    let cp = class_preserving_filter(&auts, &g);
    assert_eq!((cp.aut_cl_order, cp.inn_order, cp.out_cl_order), (25, 25, 1));
}

#[test]
fn automorphisms_form_a_group() {
    let g = perm_group("group S4\nperm (1,2,3,4)\nperm (1,2)\n");
    assert_eq!(g.order(), 24);
    let auts = automorphism_group(&g, 512).unwrap();
    assert_eq!(auts.len(), 24);
    let set: std::collections::HashSet<Vec<u32>> = auts.iter().map(|f| f.images.clone()).collect();
    for f in &auts {
        assert!(f.is_homomorphism(0, 0) && f.is_bijective());
        assert!(set.contains(&f.inverse().unwrap().images));
        for h in &auts {
            assert!(set.contains(&f.compose(h).images));
        }
    }
    let cp = class_preserving_filter(&auts, &g);
    assert_eq!((cp.aut_cl_order, cp.inn_order, cp.out_cl_order), (24, 24, 1));
}

#[test]
fn inner_automorphisms_are_normal_in_class_preserving() {
    let g = unipotent(3);
    let auts = automorphism_group(&g, 512).unwrap();
    let cp = class_preserving_filter(&auts, &g);
    for phi in auts.iter().step_by(37) {
        let phi_inv = phi.inverse().unwrap();
        for x in 0..g.order() {
            let lhs = phi.compose(&GroupMorphism::inner(&g, x)).compose(&phi_inv);
            assert_eq!(lhs, GroupMorphism::inner(&g, phi.apply(x)));
        }
    }
    for inn in &cp.inner {
        assert!(cp.class_preserving.contains(inn));
    }
}

#[test]
fn abelian_class_preserving_is_trivial() {
    let g = Arc::new(FiniteGroup::abelian(&[3, 3], 512));
    let cp = class_preserving_filter(&automorphism_group(&g, 512).unwrap(), &g);
    assert_eq!((cp.aut_cl_order, cp.inn_order), (1, 1));
}

#[test]
fn fingerprints_separate_z4_and_klein() {
    let z4 = FiniteGroup::abelian(&[4], 512);
    let v4 = FiniteGroup::abelian(&[2, 2], 512);
    let (a, b) = (fingerprint(&z4), fingerprint(&v4));
    assert!(fingerprints_differ(&a, &b));
    assert_eq!(a.element_orders.into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1), (4, 2)]);
    assert_eq!(b.abelianization, vec![2, 2]);
}

#[test]
fn fingerprint_of_s4() {
    let g = perm_group("group S4\nperm (1,2,3,4)\nperm (1,2)\n");
    let f = fingerprint(&g);
    assert_eq!(f.abelianization, vec![2]);
    assert_eq!(f.center_order, 1);
    assert_eq!(f.class_sizes.values().sum::<usize>(), 5);
}

#[test]
fn cyclic_decompositions() {
    let cases: &[(&[u64], &[u64])] = &[(&[6], &[6]), (&[25, 25], &[25, 25]), (&[2, 4], &[4, 2]), (&[2, 3], &[6]), (&[], &[])];
    for (input, expected) in cases {
        let g = FiniteGroup::abelian(input, 1024);
        let elems: Vec<usize> = (0..g.order()).collect();
        let d = decompose_abelian(&elems, g.identity(), &|a, b| g.mul(a, b));
        assert_eq!(&d.divisors, expected);
        assert_eq!(d.coords.len(), g.order());
        for (i, &gen) in d.generators.iter().enumerate() {
            assert_eq!(g.element_order(gen) as u64, d.divisors[i]);
        }
    }
}

#[test]
fn structured_backend_above_table_cap() {
    let g = FiniteGroup::abelian(&[25, 25], 512);
    assert!(!g.has_table());
    assert_eq!(g.order(), 625);
    g.check_associativity(10_000, 7).unwrap();
}

#[test]
fn closure_cap_reports_partial_count() {
    let rule = Arc::new(PermutationRule { degree: 8 });
    let gens = vec![
        PermutationRule::from_cycles(8, &[vec![1, 2, 3, 4, 5, 6, 7, 8]]).unwrap(),
        PermutationRule::from_cycles(8, &[vec![1, 2]]).unwrap(),
    ];
    match FiniteGroup::closure("S8", rule, &gens, 1000, 512) {
        Err(GroupError::ClosureTooLarge { cap: 1000, reached }) => assert_eq!(reached, 1000),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn table_spec_roundtrip_and_errors() {
    let spec = "group Z3\ntable 3\n0 1 2\n1 2 0\n2 0 1\n";
    let g = parse_group_spec(spec).unwrap().build_basic(100, 100).unwrap().unwrap();
    assert_eq!(g.order(), 3);
    let bad = parse_group_spec("group X\ntable 2\n0 1\n1\n").unwrap_err();
    assert_eq!(bad.line, 4);
    let bad = parse_group_spec("group X\nfrobnicate\n").unwrap_err();
    assert_eq!(bad.line, 2);
    let bad = parse_group_spec("perm (1,2)\n").unwrap_err();
    assert_eq!(bad.line, 1);
    let not_group = parse_group_spec("group X\ntable 2\n0 0\n1 1\n").unwrap().build_basic(10, 10);
    assert!(not_group.is_err());
    let b = parse_group_spec("group H\nbuiltin heisenberg p=5\n").unwrap();
    assert!(matches!(b.body, GroupSpecBody::Builtin { ref kind, .. } if kind == "heisenberg"));
}
