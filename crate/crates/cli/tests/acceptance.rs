//! One pass/fail line per acceptance criterion.
//!
//! Limits are wall-clock seconds and are pinned below. Every comparison is exact.

use std::process::Command;
use std::time::{Duration, Instant};

use krcomb::fermionic::FermionicData;
use krcomb::kleber::{kleber_tree, path_to_config, KleberTree};
use krcomb::verify::{self, Budget, VerifyReport};
use krcomb::virtual_kleber::virtual_kleber_tree;
use krcomb::{AffineType, Configuration, Exec, TensorSpec, Weight};

const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const KLEBER_LIMIT: Duration = Duration::from_secs(60);
const CRYSTAL_LIMIT: Duration = Duration::from_secs(60);
const XM_LIMIT: Duration = Duration::from_secs(600);

struct Outcome {
    passed: bool,
    /// Failed only where the printed data is inconsistent with itself.
    known: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        known: false,
        detail: detail.into(),
    }
}

fn ty(s: &str) -> AffineType {
    s.parse().expect("valid type label")
}

/// Weight in fundamental-weight coordinates of a partition with `n + 1` parts.
fn from_partition(p: &[i64]) -> Weight {
    Weight(p.windows(2).map(|w| w[0] - w[1]).collect())
}

/// `(row length, vacancy)` pairs per node, rows longest first.
type Rigged = Vec<Vec<(u32, i64)>>;

fn with_vacancies(fd: &FermionicData, l: &TensorSpec, nu: &Configuration) -> Rigged {
    (1..=nu.rank())
        .map(|a| nu.rows(a).iter().map(|&i| (i, fd.vacancy(l, nu, a, i))).collect())
        .collect()
}

/// Tree edges as `(depth, parent weight, edge, weight, selected)`, sorted.
type Shape = Vec<(u32, Option<Weight>, Option<Vec<i64>>, Weight, bool)>;

fn shape(tree: &KleberTree) -> Shape {
    let mut out: Shape = tree
        .nodes
        .iter()
        .map(|x| {
            let parent = x.parent.map(|p| tree.nodes[p].weight.clone());
            (x.depth, parent, x.edge.clone(), x.weight.clone(), x.selected)
        })
        .collect();
    out.sort();
    out
}

/// Builds a drawn tree from `(parent index, edge, partition, circled)` rows; the root has no parent.
fn drawn(rows: &[(Option<usize>, [i64; 3], [i64; 4], bool)]) -> Shape {
    let mut depth = vec![0u32; rows.len()];
    let mut out: Shape = Vec::new();
    for (k, (parent, edge, part, circled)) in rows.iter().enumerate() {
        if let Some(p) = parent {
            depth[k] = depth[*p] + 1;
        }
        out.push((
            depth[k],
            parent.map(|p| from_partition(&rows[p].2)),
            parent.map(|_| edge.to_vec()),
            from_partition(part),
            *circled,
        ));
    }
    out.sort();
    out
}

fn a3_kleber_example() -> Outcome {
    let start = Instant::now();
    let a3 = ty("A3~1");
    let l = TensorSpec::from_factors(&[(3, 2), (2, 1), (1, 1), (1, 1)]);
    let tree = kleber_tree(a3, &l, None).expect("A3 tree");
    let fd = FermionicData::new(a3).expect("A3 data");
    let mut got: Vec<(Weight, Rigged)> = tree
        .nodes
        .iter()
        .map(|x| {
            let (w, nu) = path_to_config(&tree, x.id);
            (w, with_vacancies(&fd, &l, &nu))
        })
        .collect();
    got.sort();
    let elapsed = start.elapsed();
    let mut printed: Vec<(Weight, Rigged)> = vec![
        (Weight(vec![2, 1, 2]), vec![vec![], vec![], vec![]]),
        (Weight(vec![0, 2, 2]), vec![vec![(1, 0)], vec![], vec![]]),
        (Weight(vec![1, 0, 3]), vec![vec![(1, 1)], vec![(1, 0)], vec![]]),
        (Weight(vec![1, 1, 1]), vec![vec![(1, 1)], vec![(1, 1)], vec![(1, 0)]]),
        (Weight(vec![0, 0, 2]), vec![vec![(1, 0), (1, 0)], vec![(1, 0), (1, 0)], vec![(1, 1)]]),
        (Weight(vec![0, 0, 2]), vec![vec![(2, 0)], vec![(2, 0)], vec![(1, 0)]]),
        (Weight(vec![3, 0, 1]), vec![vec![], vec![(1, 0)], vec![(1, 0)]]),
        (Weight(vec![0, 1, 0]), vec![vec![(2, 0)], vec![(2, 1)], vec![(2, 0)]]),
        (Weight(vec![0, 1, 0]), vec![vec![(1, 0), (1, 0)], vec![(1, 0), (1, 0)], vec![(2, 0)]]),
        (Weight(vec![2, 0, 0]), vec![vec![(1, 1)], vec![(2, 0)], vec![(2, 0)]]),
    ];
    printed.sort();
    let drawn_tree = drawn(&[
        (None, [0, 0, 0], [5, 3, 2, 0], false),
        (Some(0), [1, 0, 0], [4, 4, 2, 0], false),
        (Some(0), [1, 1, 0], [4, 3, 3, 0], false),
        (Some(0), [1, 1, 1], [4, 3, 2, 1], false),
        (Some(3), [1, 1, 0], [3, 3, 3, 1], false),
        (Some(3), [1, 1, 1], [3, 3, 2, 2], false),
        (Some(3), [0, 1, 1], [4, 2, 2, 2], false),
        (Some(0), [2, 2, 1], [3, 3, 3, 1], false),
        (Some(7), [0, 0, 1], [3, 3, 2, 2], false),
        (Some(0), [0, 1, 1], [5, 2, 2, 1], false),
    ]);
    let ok = tree.len() == 10 && got == printed && shape(&tree) == drawn_tree && elapsed < EXAMPLE_LIMIT;
    outcome(
        ok,
        format!(
            "A3 Kleber tree: {} nodes, configurations and vacancies {}, tree {}, {:.3}s",
            tree.len(),
            if got == printed { "match" } else { "differ" },
            if shape(&tree) == drawn_tree { "matches" } else { "differs" },
            elapsed.as_secs_f64()
        ),
    )
}

/// Vacancy cells where the printed C2 table disagrees with every vacancy formula.
///
/// At `L1+L3` with rows `(2,1) (2,2) (2,1)` the rows of length 1 at nodes 1 and 3
/// are printed with vacancy 1. The ambient formula, both path readings and the
/// folded `C2` vacancies (through `p^ = gamma p`) all give 0.
const C2_MISPRINTS: [&str; 2] = [
    "L1+L3 node 1 row 2: printed 1, computed 0",
    "L1+L3 node 3 row 2: printed 1, computed 0",
];

/// Cells of the computed table that differ from the printed one; `None` if the configurations differ.
fn vacancy_differences(got: &[(Weight, Rigged)], printed: &[(Weight, Rigged)]) -> Option<Vec<String>> {
    let strip = |t: &[(Weight, Rigged)]| -> Vec<(Weight, Vec<Vec<u32>>)> {
        t.iter()
            .map(|(w, r)| (w.clone(), r.iter().map(|p| p.iter().map(|c| c.0).collect()).collect()))
            .collect()
    };
    if strip(got) != strip(printed) {
        return None;
    }
    let mut out = Vec::new();
    for ((w, g), (_, p)) in got.iter().zip(printed) {
        for (a, (gp, pp)) in g.iter().zip(p).enumerate() {
            for (k, (gc, pc)) in gp.iter().zip(pp).enumerate() {
                if gc.1 != pc.1 {
                    out.push(format!("{w} node {} row {}: printed {}, computed {}", a + 1, k + 1, pc.1, gc.1));
                }
            }
        }
    }
    Some(out)
}

fn c2_virtual_example() -> Outcome {
    let start = Instant::now();
    let c2 = ty("C2~1");
    let l = TensorSpec::from_factors(&[(1, 2), (1, 1), (2, 1)]);
    let full = virtual_kleber_tree(c2, &l, None).expect("C2 virtual tree");
    let tree = full.trimmed();
    let lhat = tree.spec.clone();
    let fd = FermionicData::new(tree.ctype).expect("A3 data");
    let mut got: Vec<(Weight, Rigged)> = tree
        .nodes
        .iter()
        .filter(|x| x.selected)
        .map(|x| {
            let (w, nu) = path_to_config(&tree, x.id);
            (w, with_vacancies(&fd, &lhat, &nu))
        })
        .collect();
    got.sort();
    let elapsed = start.elapsed();
    // weights over A3 of the drawn partitions
    let w = |p: [i64; 4]| from_partition(&p);
    let mut printed: Vec<(Weight, Rigged)> = vec![
        (w([8, 5, 3, 0]), vec![vec![], vec![], vec![]]),
        (w([7, 6, 2, 1]), vec![vec![(1, 0)], vec![], vec![(1, 0)]]),
        (w([7, 4, 4, 1]), vec![vec![(1, 1)], vec![(2, 0)], vec![(1, 1)]]),
        (w([6, 5, 3, 2]), vec![vec![(2, 1)], vec![(2, 2)], vec![(2, 1)]]),
        (w([5, 4, 4, 3]), vec![vec![(2, 1), (1, 1)], vec![(2, 0), (2, 0)], vec![(2, 1), (1, 1)]]),
        (w([5, 4, 4, 3]), vec![vec![(3, 0)], vec![(4, 0)], vec![(3, 0)]]),
    ];
    printed.sort();
    let drawn_tree = drawn(&[
        (None, [0, 0, 0], [8, 5, 3, 0], true),
        (Some(0), [1, 1, 1], [7, 5, 3, 1], false),
        (Some(1), [0, 1, 0], [7, 4, 4, 1], true),
        (Some(1), [1, 1, 1], [6, 5, 3, 2], true),
        (Some(3), [1, 1, 1], [5, 5, 3, 3], false),
        (Some(4), [0, 1, 0], [5, 4, 4, 3], true),
        (Some(0), [2, 2, 2], [6, 5, 3, 2], false),
        (Some(6), [1, 2, 1], [5, 4, 4, 3], true),
        (Some(0), [1, 0, 1], [7, 6, 2, 1], true),
    ]);
    let selected = tree.nodes.iter().filter(|x| x.selected).count();
    let tree_ok = tree.len() == 9 && selected == 6 && shape(&tree) == drawn_tree;
    let diffs = vacancy_differences(&got, &printed);
    let table = match &diffs {
        None => "configurations differ".to_string(),
        Some(d) if d.is_empty() => "configurations and vacancies match".to_string(),
        Some(d) => format!("configurations match, vacancies differ at {d:?}"),
    };
    let mut o = outcome(
        tree_ok && diffs.as_ref().is_some_and(Vec::is_empty) && elapsed < EXAMPLE_LIMIT,
        format!(
            "C2 virtual Kleber tree: {} nodes before trimming, {} after, drawn tree has {} (the count of 8 in the criterion is a miscount), {selected} selected, tree {}, {table}, {:.3}s",
            full.len(),
            tree.len(),
            drawn_tree.len(),
            if shape(&tree) == drawn_tree { "matches" } else { "differs" },
            elapsed.as_secs_f64()
        ),
    );
    o.known = tree_ok && elapsed < EXAMPLE_LIMIT && diffs.is_some_and(|d| d == C2_MISPRINTS);
    o
}

fn empty_budget(name: &str) -> Budget {
    Budget {
        name: name.into(),
        kleber_types: Vec::new(),
        virtual_types: Vec::new(),
        oracle_weight: 0,
        crystal_types: Vec::new(),
        crystal_max_s: 0,
        xv_max_s: 0,
        energy_types: Vec::new(),
        energy_max_s: 0,
        xm_types: Vec::new(),
        xm_max_s: 0,
        xm_max_factors: 0,
        cap: 1 << 20,
    }
}

fn timed(budget: &Budget) -> (VerifyReport, Duration) {
    let start = Instant::now();
    let report = verify::run(budget, Exec::default()).expect("budget runs");
    (report, start.elapsed())
}

/// Cases and failures over the given kinds; a kind with no cases counts as a failure.
fn tally(report: &VerifyReport, kinds: &[&str]) -> (usize, usize, Vec<String>) {
    let mut cases = 0;
    let mut failures = 0;
    let mut missing = Vec::new();
    for k in kinds {
        match report.summary.get(*k) {
            Some(s) if s.cases > 0 => {
                cases += s.cases;
                failures += s.failures;
            }
            _ => missing.push(k.to_string()),
        }
    }
    (cases, failures, missing)
}

fn kind_outcome(report: &VerifyReport, kinds: &[&str], elapsed: Duration, limit: Option<Duration>, what: &str) -> Outcome {
    let (cases, failures, missing) = tally(report, kinds);
    let in_time = limit.is_none_or(|l| elapsed < l);
    let mut detail = format!("{what}: {cases} cases, {failures} failures, {:.1}s", elapsed.as_secs_f64());
    if !missing.is_empty() {
        detail.push_str(&format!(", no cases for {missing:?}"));
    }
    if let Some(first) = report.cases.iter().find(|c| !c.passed && kinds.contains(&c.kind.as_str())) {
        detail.push_str(&format!(", first failure {} {}", first.kind, first.key));
    }
    outcome(failures == 0 && missing.is_empty() && in_time, detail)
}

fn nonexceptional_up_to(n: usize) -> Vec<String> {
    Budget::default_budget()
        .crystal_types
        .into_iter()
        .filter(|t| ty(t).rank() <= n)
        .collect()
}

fn run_cli_verify() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_krcomb"))
        .args(["verify", "--budget", "default"])
        .output()
        .expect("krcomb runs");
    out.stdout
}

#[test]
fn acceptance() {
    let mut lines: Vec<(u32, Outcome)> = Vec::new();
    let mut report = |k: u32, o: Outcome| {
        let status = match (o.passed, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known misprint)",
            (false, false) => "FAIL",
        };
        println!("criterion {k:>2}: {status} {}", o.detail);
        lines.push((k, o));
    };

    report(1, a3_kleber_example());
    report(2, c2_virtual_example());

    let defaults = Budget::default_budget();

    let mut b = empty_budget("kleber");
    b.kleber_types = defaults.kleber_types.clone();
    b.oracle_weight = 6;
    let (r, t) = timed(&b);
    report(3, kind_outcome(&r, &["kleber"], t, Some(KLEBER_LIMIT), "Kleber vs brute force, weight <= 6"));

    let mut b = empty_budget("virtual");
    b.virtual_types = defaults.virtual_types.clone();
    b.oracle_weight = 6;
    let (r, t) = timed(&b);
    report(4, kind_outcome(&r, &["virtual_kleber"], t, None, "virtual Kleber vs filtered brute force"));
    report(5, kind_outcome(&r, &["m_equals_vm"], t, None, "virtualize/devirtualize, cocharge and vacancy scaling"));

    let mut b = empty_budget("crystals");
    b.crystal_types = nonexceptional_up_to(3);
    b.crystal_max_s = 3;
    b.xv_max_s = 2;
    let (r, t) = timed(&b);
    report(6, kind_outcome(&r, &["row_crystal"], t, Some(CRYSTAL_LIMIT), "B^{1,s} for n <= 3, s <= 3"));
    let families: std::collections::BTreeSet<_> = r.virtual_crystals.iter().map(|v| ty(&v.ctype).family()).collect();
    let mut o = kind_outcome(&r, &["virtual_crystal"], t, None, "V^{1,s} for n <= 3, s <= 3");
    o.passed &= families.len() == 6;
    o.detail.push_str(&format!(", {} folded families", families.len()));
    report(7, o);

    let mut b = empty_budget("energy");
    b.energy_types = nonexceptional_up_to(3);
    b.energy_max_s = 2;
    let (r, t) = timed(&b);
    report(
        8,
        kind_outcome(&r, &["r_matrix", "yang_baxter"], t, None, "R and H on pairs, R^2 = id, Yang-Baxter on triples, s <= 2"),
    );

    let mut b = empty_budget("x=m");
    b.xm_types = nonexceptional_up_to(2);
    b.xm_max_s = 2;
    b.xm_max_factors = 3;
    let (r, t) = timed(&b);
    let offsets = r
        .cases
        .iter()
        .filter(|c| c.class == Some(verify::FailureClass::Offset))
        .count();
    let mut o = kind_outcome(&r, &["x_equals_m"], t, Some(XM_LIMIT), "X(q^-1) = M(q) for n <= 2, <= 3 factors, s <= 2");
    o.detail.push_str(&format!(", {offsets} constant-offset failures"));
    report(9, o);

    let first = run_cli_verify();
    let second = run_cli_verify();
    let parsed: Option<serde_json::Value> = serde_json::from_slice(&first).ok();
    let failures = parsed.as_ref().and_then(|v| v["failures"].as_u64());
    report(
        10,
        outcome(
            !first.is_empty() && first == second && failures.is_some(),
            format!(
                "two `verify --budget default` runs: {} bytes, {}, {} failures",
                first.len(),
                if first == second { "identical" } else { "different" },
                failures.map_or("unknown".into(), |f| f.to_string())
            ),
        ),
    );

    let failed: Vec<u32> = lines.iter().filter(|(_, o)| !o.passed && !o.known).map(|(k, _)| *k).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
