use krcomb::kleber::{brute_force_configs, configs, kleber_tree, path_to_config, path_vacancy, PathVacancy};
use krcomb::verify::tensor_specs_up_to;
use krcomb::{dynkin_data, AffineType, Exec, TensorSpec, Weight};
use proptest::prelude::*;

fn ty(s: &str) -> AffineType {
    s.parse().expect("valid label")
}

fn spec_strategy(n: usize, weight: u32) -> impl Strategy<Value = TensorSpec> {
    let all = tensor_specs_up_to(n, weight);
    (0..all.len()).prop_map(move |k| all[k].clone())
}

#[test]
fn a3_example_has_ten_nodes() {
    let l = TensorSpec::from_factors(&[(3, 2), (2, 1), (1, 1), (1, 1)]);
    let tree = kleber_tree(ty("A3~1"), &l, None).expect("tree");
    assert_eq!(tree.len(), 10);
    assert_eq!(tree.root().weight, Weight(vec![2, 1, 2]));
    let at = |w: Vec<i64>| tree.nodes_of_weight(&Weight(w)).count();
    assert_eq!((at(vec![0, 0, 2]), at(vec![0, 1, 0]), at(vec![2, 0, 0])), (2, 2, 1));
}

#[test]
fn non_simply_laced_types_are_rejected() {
    let l = TensorSpec::from_factors(&[(1, 1)]);
    assert!(kleber_tree(ty("C2~1"), &l, None).is_err());
}

#[test]
fn path_vacancies_follow_the_weighted_tail() {
    let a1 = ty("A1~1");
    let fd = krcomb::fermionic::FermionicData::new(a1).expect("data");
    let mut unweighted_differs = 0;
    for l in tensor_specs_up_to(1, 6) {
        let tree = kleber_tree(a1, &l, None).expect("tree");
        for x in &tree.nodes {
            let (_, nu) = path_to_config(&tree, x.id);
            for &i in nu.rows(1) {
                let eq_p = fd.vacancy(&l, &nu, 1, i);
                assert_eq!(path_vacancy(&tree, x.id, 1, i, PathVacancy::WeightedTail), eq_p, "{l}");
                if path_vacancy(&tree, x.id, 1, i, PathVacancy::UnweightedTail) != eq_p {
                    unweighted_differs += 1;
                }
            }
        }
    }
    assert!(unweighted_differs > 0);
}

#[test]
fn parallel_and_sequential_trees_agree() {
    let l = TensorSpec::from_factors(&[(1, 2), (2, 1), (3, 1), (4, 1)]);
    let d4 = ty("D4~1");
    let a = krcomb::kleber::kleber_tree_with(d4, &l, None, Exec::Sequential).expect("tree");
    let b = krcomb::kleber::kleber_tree_with(d4, &l, None, Exec::Parallel).expect("tree");
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_matches_brute_force_a3(l in spec_strategy(3, 4)) {
        let a3 = ty("A3~1");
        let d = dynkin_data(a3);
        for lambda in d.dominant_weights_below(&l.top_weight(3)) {
            prop_assert_eq!(configs(a3, &l, &lambda).expect("configs"), brute_force_configs(a3, &l, &lambda).expect("oracle"));
        }
    }

    #[test]
    fn tree_invariants_d4(l in spec_strategy(4, 3)) {
        let d4 = ty("D4~1");
        let d = dynkin_data(d4);
        let tree = kleber_tree(d4, &l, None).expect("tree");
        let fd = krcomb::fermionic::FermionicData::new(d4).expect("data");
        for x in &tree.nodes {
            prop_assert!(x.weight.is_dominant());
            let (w, nu) = path_to_config(&tree, x.id);
            prop_assert!(fd.satisfies_config_equation(&l, &w, &nu));
            prop_assert!(fd.is_admissible(&l, &nu));
            if let (Some(p), Some(e)) = (x.parent, &x.edge) {
                let parent = &tree.nodes[p];
                prop_assert_eq!(&parent.weight - &d.from_root_coords(e), x.weight.clone());
                prop_assert_eq!(parent.depth + 1, x.depth);
            }
        }
    }

    #[test]
    fn pruned_tree_keeps_the_target(l in spec_strategy(2, 5)) {
        let a2 = ty("A2~1");
        let full = kleber_tree(a2, &l, None).expect("tree");
        for lambda in dynkin_data(a2).dominant_weights_below(&l.top_weight(2)) {
            let mut from_full: Vec<_> = full
                .nodes_of_weight(&lambda)
                .map(|x| path_to_config(&full, x.id).1)
                .collect();
            from_full.sort();
            prop_assert_eq!(configs(a2, &l, &lambda).expect("configs"), from_full);
        }
    }
}
