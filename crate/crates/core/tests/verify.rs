use krcomb::verify::{self, row_shapes, tensor_specs_up_to, Budget};
use krcomb::Exec;

#[test]
fn quick_budget_is_clean_in_both_modes() {
    let budget = Budget::quick();
    let seq = verify::run(&budget, Exec::Sequential).expect("runs");
    let par = verify::run(&budget, Exec::Parallel).expect("runs");
    assert_eq!(seq.failures, 0, "{:?}", seq.cases.iter().find(|c| !c.passed));
    assert_eq!(seq, par);
    for kind in ["kleber", "virtual_kleber", "m_equals_vm", "row_crystal", "virtual_crystal", "r_matrix", "yang_baxter", "x_equals_m"] {
        assert!(seq.summary.get(kind).is_some_and(|s| s.cases > 0), "{kind}");
    }
}

#[test]
fn budgets_round_trip_through_json() {
    for b in [Budget::default_budget(), Budget::quick()] {
        let text = serde_json::to_string(&b).expect("serializes");
        assert_eq!(Budget::from_json(&text).expect("parses"), b);
        assert_eq!(Budget::named(&b.name), Some(b));
    }
    assert!(Budget::from_json(r#"{"name": "x"}"#).is_err());
    assert!(Budget::named("huge").is_none());
}

#[test]
fn enumeration_sizes() {
    // weight <= 2 on one node: (1), (1,1), (2)
    assert_eq!(tensor_specs_up_to(1, 2).len(), 3);
    // weight <= 2 on two nodes: 2 singles, 3 pairs of width one, 2 of width two
    assert_eq!(tensor_specs_up_to(2, 2).len(), 7);
    assert_eq!(row_shapes(2, 3).len(), 2 + 4 + 8);
}
