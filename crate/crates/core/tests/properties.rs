//! Randomised checks of the calculus invariants against the public API.

use cellgrowth::{
    agreement_check, check_bounds, classify, count_coded_graphs, depth, profile, CellTree, Regime,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = CellTree> {
    prop_oneof![
        Just(CellTree::point()),
        Just(CellTree::edge()),
        Just(CellTree::path3()),
        (1usize..=3).prop_map(CellTree::kset),
    ]
}

/// Trees without dense orders, at most `levels` constructors deep.
fn cellular(levels: u32) -> impl Strategy<Value = CellTree> {
    leaf().prop_recursive(levels, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(|c| CellTree::union(c).unwrap()),
            (1usize..=3, inner.clone()).prop_map(|(k, t)| CellTree::mset(k, t).unwrap()),
            inner.prop_map(CellTree::mset_inf),
        ]
    })
}

fn any_tree() -> impl Strategy<Value = CellTree> {
    prop_oneof![
        3 => cellular(3),
        1 => cellular(1).prop_map(CellTree::seq_dlo),
    ]
}

fn infinite_tree() -> impl Strategy<Value = CellTree> {
    any_tree().prop_filter("infinite", |t| !t.is_finite())
}

fn partitions(n: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::from(0u32); n + 1];
    p[0] = BigUint::from(1u32);
    for part in 1..=n {
        for m in part..=n {
            let add = p[m - part].clone();
            p[m] += add;
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn profiles_start_at_one_and_never_drop(tree in any_tree()) {
        let p = profile(&tree, 40).unwrap();
        prop_assert_eq!(p.value(0), &BigUint::from(1u32));
        if !tree.is_finite() {
            for n in 1..40 {
                prop_assert!(p.value(n) >= &BigUint::from(1u32));
                prop_assert!(p.value(n + 1) >= p.value(n), "drop at {} for {}", n, tree);
            }
        }
    }

    #[test]
    fn finite_trees_vanish_past_their_size(tree in cellular(2)) {
        prop_assume!(tree.is_finite());
        let size = tree.finite_size().unwrap();
        prop_assume!(size < 30);
        let p = profile(&tree, 30).unwrap();
        prop_assert!(p.value(size) > &BigUint::from(0u32));
        for n in size + 1..=30 {
            prop_assert_eq!(p.value(n), &BigUint::from(0u32));
        }
    }

    #[test]
    fn union_is_bounded_by_product(a in infinite_tree(), b in infinite_tree()) {
        let n_max = 32;
        let pa = profile(&a, n_max).unwrap();
        let pb = profile(&b, n_max).unwrap();
        let pu = profile(&CellTree::union(vec![a, b]).unwrap(), n_max).unwrap();
        for n in 0..=n_max {
            let bound = BigUint::from(n as u64 + 1) * pa.value(n) * pb.value(n);
            prop_assert!(pu.value(n) <= &bound);
        }
    }

    #[test]
    fn copies_sit_between_multiset_and_factorial_multiple(x in cellular(2), k in 2usize..=3) {
        let n_max = 24;
        let unlabeled = profile(&CellTree::mset(k, x.clone()).unwrap(), n_max).unwrap();
        let labeled = profile(&CellTree::union(vec![x; k]).unwrap(), n_max).unwrap();
        let index = BigUint::from(if k == 2 { 2u32 } else { 6 });
        for n in 0..=n_max {
            prop_assert!(unlabeled.value(n) <= labeled.value(n));
            prop_assert!(labeled.value(n) <= &(&index * unlabeled.value(n)));
        }
    }

    #[test]
    fn lemma_checks_pass(tree in cellular(2)) {
        let report = check_bounds(&tree, 32).unwrap();
        prop_assert!(report.passed(), "{:?}", report.checks.iter().find(|c| !c.passed()));
    }

    #[test]
    fn deep_trees_dominate_partitions(x in cellular(1)) {
        let tree = CellTree::mset_inf(CellTree::mset_inf(x));
        let p = profile(&tree, 64).unwrap();
        let part = partitions(64);
        for n in 4..=64 {
            prop_assert!(p.value(n) >= &part[n]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn regime_follows_depth(tree in cellular(3)) {
        let report = classify(&tree, 256).unwrap();
        let expected = match depth(&tree).unwrap() {
            0 => Regime::Finite,
            1 => Regime::Polynomial,
            2 => Regime::StretchedExponential,
            _ => Regime::LogIterated,
        };
        prop_assert_eq!(report.regime, expected, "{}", tree);
        if let (Regime::LogIterated, Some(r)) = (report.regime, report.r) {
            prop_assert_eq!(r, depth(&tree).unwrap() - 2);
        }
    }

    #[test]
    fn oracles_agree_on_random_trees(tree in any_tree()) {
        let report = agreement_check(&tree, 5, 5);
        match report {
            Ok(r) => prop_assert!(r.all_agree(), "{:?}", r.first_disagreement()),
            Err(cellgrowth::Error::Capacity(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn coded_graph_counts_increase() {
    let counts: Vec<BigUint> = (1..=10)
        .map(|n| count_coded_graphs(n).unwrap().value)
        .collect();
    assert!(counts.windows(2).skip(1).all(|w| w[1] > w[0]));
}
