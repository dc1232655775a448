//! Batch verification: tree algorithms against brute force, virtualization,
//! crystals, energies and `X = M`.
//!
//! Cases are listed in a fixed order, evaluated through [`Exec::map`] and
//! reported sorted by key, so a report never depends on the execution mode.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::TensorSpec;
use crate::crystals::{KrSpec, TensorCrystal};
use crate::energy::{x_polynomial, EnergyCache};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fermionic::{m_polynomial, FermionicData};
use crate::kleber::{brute_force_configs, configs};
use crate::qpoly::QPolynomial;
use crate::root_data::{dynkin_data, AffineType, Family, Rational, Weight};
use crate::virtual_crystals::{rhat_closed, verify_row, VirtualReport};
use crate::virtual_kleber::{
    brute_force_virtual_configs, embedding, enumerate_virtual_rigged, m_polynomial_via_virtual, virtual_configs,
};

/// What to verify. Type lists use the short labels, e.g. `C2~1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    pub name: String,
    /// Simply-laced types checked against the brute-force oracle.
    pub kleber_types: Vec<String>,
    /// Folded types checked against the virtual oracle and for `M = VM`.
    pub virtual_types: Vec<String>,
    /// Bound on `sum_a sum_i i L_i^(a)` for the oracle comparisons.
    pub oracle_weight: u32,
    /// Types whose `B^{1,s}` and `V^{1,s}` are checked up to `crystal_max_s`.
    pub crystal_types: Vec<String>,
    pub crystal_max_s: u32,
    /// `X^v = X` is compared for `s <= xv_max_s`.
    pub xv_max_s: u32,
    /// R-matrix pairs and Yang-Baxter triples use widths up to `energy_max_s`.
    pub energy_types: Vec<String>,
    pub energy_max_s: u32,
    /// `X = M` on tensors of at most `xm_max_factors` rows of width `<= xm_max_s`.
    pub xm_types: Vec<String>,
    pub xm_max_s: u32,
    pub xm_max_factors: usize,
    /// Element cap for crystal enumerations.
    pub cap: usize,
}

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Nonexceptional types with a row crystal model and rank at most `n`.
fn crystal_types_up_to(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for (fam, min) in [
        (Family::A1, 1),
        (Family::B1, 3),
        (Family::C1, 2),
        (Family::D1, 4),
        (Family::A2Even, 1),
        (Family::A2EvenDagger, 2),
        (Family::A2Odd, 3),
        (Family::D2, 2),
    ] {
        for r in min..=n {
            out.push(AffineType::new(fam, r).expect("rank above the minimum").label());
        }
    }
    out
}

impl Budget {
    /// All nonexceptional types with `n <= 3`, rows of width `<= 2`, up to three factors.
    pub fn default_budget() -> Budget {
        Budget {
            name: "default".into(),
            kleber_types: labels(&["A1~1", "A2~1", "A3~1", "D4~1"]),
            virtual_types: labels(&["C2~1", "A4~2", "A4~2dag", "D3~2", "A5~2", "B3~1"]),
            oracle_weight: 6,
            crystal_types: crystal_types_up_to(3),
            crystal_max_s: 3,
            xv_max_s: 2,
            energy_types: crystal_types_up_to(3),
            energy_max_s: 2,
            xm_types: crystal_types_up_to(3),
            xm_max_s: 2,
            xm_max_factors: 3,
            cap: 1 << 20,
        }
    }

    /// A few seconds of every kind of check.
    pub fn quick() -> Budget {
        Budget {
            name: "quick".into(),
            kleber_types: labels(&["A2~1", "D4~1"]),
            virtual_types: labels(&["C2~1", "A4~2", "A4~2dag", "D3~2", "A5~2", "B3~1"]),
            oracle_weight: 3,
            crystal_types: labels(&["A2~1", "C2~1", "A4~2", "A4~2dag", "D3~2", "A5~2", "B3~1"]),
            crystal_max_s: 2,
            xv_max_s: 1,
            energy_types: labels(&["A2~1", "C2~1", "A4~2", "D3~2"]),
            energy_max_s: 2,
            xm_types: labels(&["A1~1", "C2~1", "A4~2", "A4~2dag", "D3~2"]),
            xm_max_s: 2,
            xm_max_factors: 2,
            cap: 1 << 18,
        }
    }

    pub fn named(name: &str) -> Option<Budget> {
        match name {
            "default" => Some(Budget::default_budget()),
            "quick" => Some(Budget::quick()),
            _ => None,
        }
    }

    pub fn from_json(text: &str) -> Result<Budget> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("budget: {e}")))
    }
}

fn parse_types(v: &[String]) -> Result<Vec<AffineType>> {
    v.iter().map(|s| s.parse()).collect()
}

/// Nonempty tensor specs with `sum_a sum_i i L_i^(a) <= weight`, in a fixed order.
pub fn tensor_specs_up_to(n: usize, weight: u32) -> Vec<TensorSpec> {
    let items: Vec<(usize, u32)> = (1..=weight).flat_map(|i| (1..=n).map(move |a| (a, i))).collect();
    fn rec(items: &[(usize, u32)], k: usize, left: u32, cur: &mut Vec<(usize, u32)>, out: &mut Vec<TensorSpec>) {
        if k == items.len() {
            if !cur.is_empty() {
                out.push(TensorSpec::from_factors(cur));
            }
            return;
        }
        let (a, i) = items[k];
        let mut c = 0;
        loop {
            rec(items, k + 1, left - c * i, cur, out);
            if (c + 1) * i > left {
                break;
            }
            c += 1;
            cur.push((a, i));
        }
        for _ in 0..c {
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&items, 0, weight, &mut Vec::new(), &mut out);
    out
}

/// Row widths of up to `factors` rows with widths `<= max_s`, in a fixed order.
pub fn row_shapes(max_s: u32, factors: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..factors {
        let mut next = Vec::new();
        for sh in &level {
            for s in 1..=max_s {
                let mut v = sh.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn rows_spec(shape: &[u32]) -> TensorSpec {
    TensorSpec::from_factors(&shape.iter().map(|&s| (1, s)).collect::<Vec<_>>())
}

/// Dimension of the classical highest weight crystal `B(k Lambda_1)` by closed formulas.
pub fn symmetric_power_dim(fam: Family, n: usize, k: u32) -> u64 {
    fn binom(a: i64, b: i64) -> u64 {
        if b < 0 || a < b {
            return 0;
        }
        let b = b.min(a - b);
        (0..b).fold(1u64, |acc, j| acc * (a - j) as u64 / (j + 1) as u64)
    }
    let (n, k) = (n as i64, k as i64);
    match fam {
        Family::A1 => binom(n + k, k),
        Family::C1 | Family::A2Even | Family::A2Odd => binom(2 * n + k - 1, k),
        Family::B1 | Family::D2 | Family::A2EvenDagger => binom(2 * n + k, k) - binom(2 * n + k - 2, k - 2),
        Family::D1 => binom(2 * n + k - 1, k) - binom(2 * n + k - 3, k - 2),
        _ => 0,
    }
}

/// The classical decomposition of `B^{1,s}`: widths `s'` of the components `B(s' Lambda_1)`.
pub fn row_decomposition(x: AffineType, s: u32) -> Vec<u32> {
    match x.family() {
        Family::A2Even | Family::D2 => (0..=s).collect(),
        Family::C1 | Family::A2EvenDagger => (0..=s).filter(|k| (s - k) % 2 == 0).collect(),
        _ => vec![s],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FailureClass {
    /// Both sides computed and differ.
    Mismatch,
    /// `X(q^{-1})` and `M(q)` differ by a constant power of `q`.
    Offset,
    /// A computation returned an error.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub kind: String,
    pub key: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<FailureClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseResult {
    fn pass(kind: &str, key: String) -> Self {
        CaseResult {
            kind: kind.into(),
            key,
            passed: true,
            class: None,
            detail: None,
        }
    }

    fn fail(kind: &str, key: String, class: FailureClass, detail: String) -> Self {
        CaseResult {
            kind: kind.into(),
            key,
            passed: false,
            class: Some(class),
            detail: Some(detail),
        }
    }

    fn from_check(kind: &str, key: String, r: Result<Option<String>>) -> Self {
        match r {
            Ok(None) => CaseResult::pass(kind, key),
            Ok(Some(d)) => CaseResult::fail(kind, key, FailureClass::Mismatch, d),
            Err(e) => CaseResult::fail(kind, key, FailureClass::Error, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindSummary {
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub budget: String,
    pub summary: BTreeMap<String, KindSummary>,
    pub failures: usize,
    pub virtual_crystals: Vec<VirtualReport>,
    pub cases: Vec<CaseResult>,
}

impl VerifyReport {
    fn assemble(budget: &Budget, mut cases: Vec<CaseResult>, mut virtual_crystals: Vec<VirtualReport>) -> Self {
        cases.sort_by(|a, b| (&a.kind, &a.key).cmp(&(&b.kind, &b.key)));
        virtual_crystals.sort_by(|a, b| (&a.ctype, a.s).cmp(&(&b.ctype, b.s)));
        let mut summary: BTreeMap<String, KindSummary> = BTreeMap::new();
        for c in &cases {
            let e = summary.entry(c.kind.clone()).or_insert(KindSummary { cases: 0, failures: 0 });
            e.cases += 1;
            e.failures += usize::from(!c.passed);
        }
        let failures = cases.iter().filter(|c| !c.passed).count();
        VerifyReport {
            budget: budget.name.clone(),
            summary,
            failures,
            virtual_crystals,
            cases,
        }
    }
}

/// A single check, boxed so that every kind shares one worker pool.
type Job<'a> = Box<dyn Fn() -> CaseResult + Send + Sync + 'a>;

pub fn kleber_case(ct: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Option<String>> {
    let tree = configs(ct, l, lambda)?;
    let oracle = brute_force_configs(ct, l, lambda)?;
    Ok((tree != oracle).then(|| format!("tree gives {} configurations, oracle {}", tree.len(), oracle.len())))
}

pub fn virtual_kleber_case(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Option<String>> {
    let tree = virtual_configs(x, l, lambda)?;
    let oracle = brute_force_virtual_configs(x, l, lambda)?;
    Ok((tree != oracle).then(|| format!("tree selects {} configurations, oracle {}", tree.len(), oracle.len())))
}

/// Virtualization round trip, cocharge and vacancy scaling on every rigged configuration.
pub fn m_equals_vm_case(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Option<String>> {
    let emb = embedding(x)?;
    let fy = FermionicData::new(emb.y)?;
    let lhat = emb.lift_spec(l);
    let dagger = x.family() == Family::A2EvenDagger;
    let fx = if dagger { None } else { Some(FermionicData::new(x)?) };
    let gamma0 = Rational::from_integer(emb.gamma[0] as i64);
    for vr in enumerate_virtual_rigged(x, l, lambda)? {
        if emb.devirtualize_rigged(&vr.virtual_rc)? != vr.folded || emb.virtualize(&vr.folded) != vr.virtual_rc {
            return Ok(Some(format!("round trip fails on {}", vr.folded.nu)));
        }
        if !(vr.virtual_cocharge / gamma0).is_integer() {
            return Ok(Some(format!("cc^ = {} is not divisible by gamma_0", vr.virtual_cocharge)));
        }
        let Some(fx) = &fx else { continue };
        let cc = fx.rigged_cocharge(&vr.folded);
        if vr.virtual_cocharge != gamma0 * cc {
            return Ok(Some(format!("cc^ = {} but gamma_0 cc = {}", vr.virtual_cocharge, gamma0 * cc)));
        }
        let nu = &vr.folded.nu;
        let nu_hat = &vr.virtual_rc.nu;
        for a in 1..=emb.x_rank() {
            for (i, _) in nu.multiplicities(a) {
                let p = fx.vacancy(l, nu, a, i);
                for &b in &emb.orbits[a] {
                    let ph = fy.vacancy(&lhat, nu_hat, b, emb.grid[a] * i);
                    if ph != emb.gamma[a] as i64 * p {
                        return Ok(Some(format!("p^ at node {b} is {ph}, gamma p = {}", emb.gamma[a] as i64 * p)));
                    }
                }
            }
        }
    }
    if !dagger {
        let direct = m_polynomial(x, l, lambda)?;
        let virt = m_polynomial_via_virtual(x, l, lambda)?;
        if direct != virt {
            return Ok(Some(format!("M = {direct} but VM = {virt}")));
        }
    }
    Ok(None)
}

/// `B^{1,s}`: classical decomposition, partial inverse, weight compatibility, connectedness.
pub fn row_crystal_case(cache: &EnergyCache, x: AffineType, s: u32) -> Result<Option<String>> {
    let spec = KrSpec::new(x, 1, s)?;
    let t = cache.table(spec);
    let n = x.rank();
    let widths = row_decomposition(x, s);
    let expected: u64 = widths.iter().map(|&k| symmetric_power_dim(x.family(), n, k)).sum();
    if t.len() as u64 != expected {
        return Ok(Some(format!("{} elements, expected {expected}", t.len())));
    }
    let mut highest: Vec<i64> = (0..t.len() as u32)
        .filter(|&b| t.is_classical_highest(b))
        .map(|b| {
            let w = t.weight(b);
            if (2..=n).all(|a| w.coeff(a) == 0) {
                w.coeff(1)
            } else {
                -1
            }
        })
        .collect();
    highest.sort();
    let want: Vec<i64> = widths.iter().map(|&k| k as i64).collect();
    if highest != want {
        return Ok(Some(format!("classically highest weights {highest:?}, expected {want:?}")));
    }
    let dd = dynkin_data(x);
    for b in 0..t.len() as u32 {
        for i in 0..t.nodes() {
            if let Some(c) = t.e[i][b as usize] {
                if t.f[i][c as usize] != Some(b) {
                    return Ok(Some(format!("f_{i} e_{i} fails on {}", t.labels[b as usize])));
                }
                let diff = &t.weight(c) - &t.weight(b);
                let alpha = if i == 0 { affine_zero_root(&dd.a, n, &dd) } else { dd.simple_root(i) };
                if diff != alpha {
                    return Ok(Some(format!("wt(e_{i} b) - wt(b) is {diff} on {}", t.labels[b as usize])));
                }
            }
            let (e, p) = (t.eps[i][b as usize] as i64, t.phi[i][b as usize] as i64);
            if i > 0 && p - e != t.weight(b).coeff(i) {
                return Ok(Some(format!("phi_{i} - eps_{i} is not the weight on {}", t.labels[b as usize])));
            }
        }
    }
    let g = crate::crystals::generate_graph(&TensorCrystal::new(vec![t.clone()]), cache_cap(&t))?;
    if g.vertices.len() != t.len() {
        return Ok(Some(format!("not connected: {} of {}", g.vertices.len(), t.len())));
    }
    Ok(None)
}

fn cache_cap(t: &crate::crystals::CrystalTable) -> usize {
    t.len() + 1
}

/// Classical part of `alpha_0 = -(1/a_0) sum_{i >= 1} a_i alpha_i`.
fn affine_zero_root(a: &[i64], n: usize, dd: &crate::root_data::DynkinData) -> Weight {
    let mut w = Weight::zero(n);
    for i in 1..=n {
        w = &w + &Weight(dd.simple_root(i).0.iter().map(|c| c * a[i]).collect());
    }
    Weight(w.0.iter().map(|c| -c / a[0]).collect())
}

/// `R` is well defined with `H(u (x) u) = 0`, and `R' R = id`.
pub fn rmatrix_case(cache: &EnergyCache, left: KrSpec, right: KrSpec) -> Result<Option<String>> {
    let rm = cache.rmap(left, right)?;
    let back = cache.rmap(right, left)?;
    let (lt, rt) = (cache.table(left), cache.table(right));
    if rm.local_energy(lt.highest, rt.highest) != 0 {
        return Ok(Some("H(u (x) u) is not 0".into()));
    }
    for l in 0..lt.len() as u32 {
        for r in 0..rt.len() as u32 {
            let (r2, l2) = rm.apply(l, r);
            if left == right && (r2, l2) != (l, r) {
                return Ok(Some("R is not the identity on B (x) B".into()));
            }
            if back.apply(r2, l2) != (l, r) {
                return Ok(Some("R R is not the identity".into()));
            }
        }
    }
    Ok(None)
}

/// `R_1 R_2 R_1 = R_2 R_1 R_2` on `B_1 (x) B_2 (x) B_3`.
pub fn yang_baxter_case(cache: &EnergyCache, specs: [KrSpec; 3], cap: usize) -> Result<Option<String>> {
    let t = TensorCrystal::new(specs.iter().map(|&s| cache.table(s)).collect());
    for b in t.elements(cap)? {
        let run = |order: [usize; 3]| -> Result<Vec<u32>> {
            let mut sp = specs.to_vec();
            let mut c = b.clone();
            for l in order {
                cache.swap(&mut sp, &mut c, l)?;
            }
            Ok(c)
        };
        if run([0, 1, 0])? != run([1, 0, 1])? {
            return Ok(Some(format!("fails on {}", t.label(&b))));
        }
    }
    Ok(None)
}

/// `X(B, lambda; q^{-1}) = M(B, lambda; q)`.
pub fn x_equals_m_case(cache: &EnergyCache, x: AffineType, shape: &[u32], lambda: &Weight) -> CaseResult {
    let key = format!("{} {:?} {}", x.label(), shape, lambda);
    let specs: Result<Vec<KrSpec>> = shape.iter().map(|&s| KrSpec::new(x, 1, s)).collect();
    let run = || -> Result<(QPolynomial, QPolynomial)> {
        let xq = x_polynomial(cache, &specs?, lambda)?;
        let m = m_polynomial(x, &rows_spec(shape), lambda)?;
        Ok((xq.invert(), m))
    };
    match run() {
        Ok((xi, m)) if xi == m => CaseResult::pass("x_equals_m", key),
        Ok((xi, m)) => {
            let class = match xi.offset_from(&m) {
                Some(_) => FailureClass::Offset,
                None => FailureClass::Mismatch,
            };
            CaseResult::fail("x_equals_m", key, class, format!("X(1/q) = {xi}, M = {m}"))
        }
        Err(e) => CaseResult::fail("x_equals_m", key, FailureClass::Error, e.to_string()),
    }
}

fn dominant_below(x: AffineType, l: &TensorSpec) -> Vec<Weight> {
    dynkin_data(x).dominant_weights_below(&l.top_weight(x.rank()))
}

/// Whether `x` has a virtual row crystal.
fn has_virtual_rows(x: AffineType) -> bool {
    matches!(
        x.family(),
        Family::B1 | Family::C1 | Family::A2Even | Family::A2EvenDagger | Family::A2Odd | Family::D2
    )
}

/// Run every check of the budget.
pub fn run(budget: &Budget, exec: Exec) -> Result<VerifyReport> {
    let cache = Arc::new(EnergyCache::default());
    let mut jobs: Vec<Job> = Vec::new();
    for ct in parse_types(&budget.kleber_types)? {
        for l in tensor_specs_up_to(ct.rank(), budget.oracle_weight) {
            for lambda in dominant_below(ct, &l) {
                let key = format!("{} {} {}", ct.label(), l, lambda);
                let l = l.clone();
                jobs.push(Box::new(move || {
                    CaseResult::from_check("kleber", key.clone(), kleber_case(ct, &l, &lambda))
                }));
            }
        }
    }
    for x in parse_types(&budget.virtual_types)? {
        for l in tensor_specs_up_to(x.rank(), budget.oracle_weight) {
            for lambda in dominant_below(x, &l) {
                let key = format!("{} {} {}", x.label(), l, lambda);
                let (l1, l2, lam2, key2) = (l.clone(), l.clone(), lambda.clone(), key.clone());
                jobs.push(Box::new(move || {
                    CaseResult::from_check("virtual_kleber", key.clone(), virtual_kleber_case(x, &l1, &lambda))
                }));
                jobs.push(Box::new(move || {
                    CaseResult::from_check("m_equals_vm", key2.clone(), m_equals_vm_case(x, &l2, &lam2))
                }));
            }
        }
    }
    let crystal_types = parse_types(&budget.crystal_types)?;
    let mut vjobs: Vec<(AffineType, u32)> = Vec::new();
    for &x in &crystal_types {
        for s in 1..=budget.crystal_max_s {
            let c = cache.clone();
            jobs.push(Box::new(move || {
                CaseResult::from_check("row_crystal", format!("{} s={s}", x.label()), row_crystal_case(&c, x, s))
            }));
            if has_virtual_rows(x) {
                vjobs.push((x, s));
            }
        }
    }
    for x in parse_types(&budget.energy_types)? {
        let widths: Vec<u32> = (1..=budget.energy_max_s).collect();
        let spec = move |s: u32| KrSpec::new(x, 1, s);
        for &s in &widths {
            for &t in &widths {
                let c = cache.clone();
                jobs.push(Box::new(move || {
                    let r = spec(s).and_then(|a| spec(t).and_then(|b| rmatrix_case(&c, a, b)));
                    CaseResult::from_check("r_matrix", format!("{} {s},{t}", x.label()), r)
                }));
                if has_virtual_rows(x) {
                    let c = cache.clone();
                    jobs.push(Box::new(move || {
                        let r = rhat_closed(&c, x, s, t, budget.cap).map(|ok| (!ok).then(|| "R leaves V (x) V'".to_string()));
                        CaseResult::from_check("virtual_r_matrix", format!("{} {s},{t}", x.label()), r)
                    }));
                }
                for &u in &widths {
                    let c = cache.clone();
                    let cap = budget.cap;
                    jobs.push(Box::new(move || {
                        let r = (|| yang_baxter_case(&c, [spec(s)?, spec(t)?, spec(u)?], cap))();
                        CaseResult::from_check("yang_baxter", format!("{} {s},{t},{u}", x.label()), r)
                    }));
                }
            }
        }
    }
    for x in parse_types(&budget.xm_types)? {
        for shape in row_shapes(budget.xm_max_s, budget.xm_max_factors) {
            for lambda in dominant_below(x, &rows_spec(&shape)) {
                let (c, shape) = (cache.clone(), shape.clone());
                jobs.push(Box::new(move || x_equals_m_case(&c, x, &shape, &lambda)));
            }
        }
    }
    let cases = exec.map(&jobs, |job| job());
    let vreports = exec.map(&vjobs, |&(x, s)| verify_row(&cache, x, s, budget.xv_max_s, budget.cap));
    let mut vcases = Vec::new();
    let mut virtual_crystals = Vec::new();
    for ((x, s), r) in vjobs.iter().zip(vreports) {
        let key = format!("{} s={s}", x.label());
        match r {
            Ok(rep) => {
                vcases.push(if rep.passed() {
                    CaseResult::pass("virtual_crystal", key)
                } else {
                    CaseResult::fail("virtual_crystal", key, FailureClass::Mismatch, format!("{rep:?}"))
                });
                virtual_crystals.push(rep);
            }
            Err(e) => vcases.push(CaseResult::fail("virtual_crystal", key, FailureClass::Error, e.to_string())),
        }
    }
    let mut all = cases;
    all.extend(vcases);
    Ok(VerifyReport::assemble(budget, all, virtual_crystals))
}
