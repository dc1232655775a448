//! Virtual crystals `V^{1,s}` inside an ambient simply-laced crystal.
//!
//! For the A-chain (`C_n^(1)`, `A_2n^(2)`, `A_2n^(2)dag`, `D_{n+1}^(2)`) the
//! ambient crystal is `B^{2n-1,s} (x) B^{1,s}` of `A_{2n-1}^(1)`, a column dual
//! followed by a row. For `B_n^(1)` and `A_{2n-1}^(2)` it is a single row of
//! `D_{n+1}^(1)` of width `2s` and `s`.
//!
//! In the A-chain the column factor has counts `yv[i - 1]` of the letter
//! `i^v`, the column missing `i`, and the row has counts `y[i - 1]`.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::crystals::{CrystalTable, KrSpec, TableCache, TensorCrystal};
use crate::energy::{x_polynomial, EnergyCache};
use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;
use crate::root_data::{dynkin_data, AffineType, Family, Weight};
use crate::virtual_kleber::{embedding, EmbeddingData};

/// Shape of the ambient crystal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ambient {
    /// `B^{2n-1,s} (x) B^{1,s}` of `A_{2n-1}^(1)`.
    ColumnRow,
    /// `B^{1,ks}` of `D_{n+1}^(1)`.
    Row,
}

/// The ambient crystal of `V^{1,s}` for one type `X` and width `s`.
pub struct VirtualRow {
    pub x: AffineType,
    pub s: u32,
    pub emb: EmbeddingData,
    pub ambient: Ambient,
    /// Factors of the ambient crystal over `Y`, left to right.
    pub specs: Vec<KrSpec>,
    pub crystal: TensorCrystal,
    x_spec: KrSpec,
}

impl VirtualRow {
    pub fn new(tables: &TableCache, x: AffineType, s: u32) -> Result<Self> {
        let x_spec = KrSpec::new(x, 1, s)?;
        let emb = embedding(x)?;
        let (ambient, specs) = match x.family() {
            Family::C1 | Family::A2Even | Family::A2EvenDagger | Family::D2 => {
                (Ambient::ColumnRow, vec![KrSpec::column_dual(emb.y, s)?, KrSpec::new(emb.y, 1, s)?])
            }
            Family::B1 => (Ambient::Row, vec![KrSpec::new(emb.y, 1, 2 * s)?]),
            Family::A2Odd => (Ambient::Row, vec![KrSpec::new(emb.y, 1, s)?]),
            _ => return Err(Error::Unsupported(format!("no virtual row crystal for {x}"))),
        };
        let crystal = TensorCrystal::new(specs.iter().map(|&sp| tables.get(sp)).collect());
        Ok(VirtualRow {
            x,
            s,
            emb,
            ambient,
            specs,
            crystal,
            x_spec,
        })
    }

    pub fn x_spec(&self) -> KrSpec {
        self.x_spec
    }

    fn n(&self) -> usize {
        self.x.rank()
    }

    /// Number of nodes of `X`, including 0.
    pub fn x_nodes(&self) -> usize {
        self.n() + 1
    }

    fn key(&self, v: &[u32], k: usize) -> &[u32] {
        &self.crystal.factors[k].keys[v[k] as usize]
    }

    /// `(yv, y)` of an A-chain element.
    pub fn column_row_counts(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        debug_assert_eq!(self.ambient, Ambient::ColumnRow);
        (self.key(v, 0).to_vec(), self.key(v, 1).to_vec())
    }

    fn from_column_row(&self, yv: &[u32], y: &[u32]) -> Option<Vec<u32>> {
        Some(vec![self.crystal.factors[0].find(yv)?, self.crystal.factors[1].find(y)?])
    }

    /// `e_i` hat: `e_j^{gamma_i}` for every `j` in the orbit of `i`.
    pub fn ehat(&self, v: &[u32], i: usize) -> Option<Vec<u32>> {
        self.hat(v, i, true)
    }

    pub fn fhat(&self, v: &[u32], i: usize) -> Option<Vec<u32>> {
        self.hat(v, i, false)
    }

    fn hat(&self, v: &[u32], i: usize, raise: bool) -> Option<Vec<u32>> {
        let mut cur = v.to_vec();
        for &j in &self.emb.orbits[i] {
            for _ in 0..self.emb.gamma[i] {
                cur = if raise { self.crystal.e(&cur, j) } else { self.crystal.f(&cur, j) }?;
            }
        }
        Some(cur)
    }

    /// `eps_j` and `phi_j` agree along the orbit of `i` and are divisible by `gamma_i`.
    pub fn is_aligned_at(&self, v: &[u32], i: usize) -> bool {
        let g = self.emb.gamma[i];
        let orbit = &self.emb.orbits[i];
        let (e0, p0) = (self.crystal.eps(v, orbit[0]), self.crystal.phi(v, orbit[0]));
        e0 % g == 0
            && p0 % g == 0
            && orbit
                .iter()
                .all(|&j| self.crystal.eps(v, j) == e0 && self.crystal.phi(v, j) == p0)
    }

    pub fn is_aligned(&self, v: &[u32]) -> bool {
        (0..self.x_nodes()).all(|i| self.is_aligned_at(v, i))
    }

    /// `u` of the ambient crystal.
    pub fn highest(&self) -> Vec<u32> {
        self.crystal.highest()
    }

    /// Closure of `u` under the hat operators, sorted.
    pub fn generate(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        let start = self.highest();
        let mut seen: HashSet<Vec<u32>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.x_nodes() {
                for w in [self.ehat(&v, i), self.fhat(&v, i)].into_iter().flatten() {
                    if seen.insert(w.clone()) {
                        if seen.len() > cap {
                            return Err(Error::Resource {
                                what: format!("virtual crystal of {} with s = {}", self.x, self.s),
                                cap,
                            });
                        }
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Every ambient element satisfying the membership predicate, sorted.
    pub fn predicate_set(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        Ok(self
            .crystal
            .elements(cap)?
            .into_iter()
            .filter(|v| self.is_member(v))
            .collect())
    }

    /// The explicit description of `V^{1,s}`.
    pub fn is_member(&self, v: &[u32]) -> bool {
        let n = self.n();
        match self.ambient {
            Ambient::Row => {
                let y = self.key(v, 0);
                let letters = y.len();
                let (x, xb) = (|i: usize| y[i - 1], |i: usize| y[letters - i]);
                if x(n + 1) != 0 || xb(n + 1) != 0 {
                    return false;
                }
                match self.x.family() {
                    Family::B1 => (1..n).all(|i| x(i) % 2 == 0 && xb(i) % 2 == 0) && (x(n) + xb(n)) % 2 == 0,
                    _ => true,
                }
            }
            Ambient::ColumnRow => {
                let (yv, y) = self.column_row_counts(v);
                if !is_self_dual(&yv, &y) {
                    return false;
                }
                let even_min = |i: usize| y[i - 1].min(yv[i - 1]) % 2 == 0;
                match self.x.family() {
                    Family::C1 => even_min(1) && even_min(n + 1),
                    Family::A2Even => even_min(n + 1),
                    Family::A2EvenDagger => even_min(1),
                    _ => true,
                }
            }
        }
    }

    /// Image of an element of `B^{1,s}` of `X`, given by its letter counts.
    pub fn embed(&self, b: &[u32]) -> Option<Vec<u32>> {
        let n = self.n();
        let sp = self.x_spec;
        let x = |i: usize| b[sp.unbarred(i)];
        let xb = |i: usize| b[sp.barred(i)];
        match self.ambient {
            Ambient::Row => {
                let t = &self.crystal.factors[0];
                let letters = 2 * (n + 1);
                let mut y = vec![0u32; letters];
                let double = u32::from(self.x.family() == Family::B1) + 1;
                for i in 1..=n {
                    y[i - 1] = double * x(i);
                    y[letters - i] = double * xb(i);
                }
                if self.x.family() == Family::B1 {
                    y[n - 1] += b[sp.circ()];
                    y[letters - n] += b[sp.circ()];
                }
                Some(vec![t.find(&y)?])
            }
            Ambient::ColumnRow => {
                let (yv, y) = xy_full_counts(sp, b);
                self.from_column_row(&yv, &y)
            }
        }
    }

    /// The embedding computed by commuting the single letter images to the left.
    pub fn embed_by_commuting(&self, b: &[u32]) -> Option<Vec<u32>> {
        let n = self.n();
        let sp = self.x_spec;
        let n2 = 2 * n as u32;
        // letters as (column letter, row letter) pairs in increasing order
        let mut pairs = Vec::with_capacity(self.s as usize);
        for i in 1..=n {
            pairs.extend(std::iter::repeat((n2 + 1 - i as u32, i as u32)).take(b[sp.unbarred(i)] as usize));
        }
        if sp.letters() % 2 == 1 {
            pairs.extend(std::iter::repeat((n as u32 + 1, n as u32 + 1)).take(b[sp.circ()] as usize));
        }
        for i in (1..=n).rev() {
            pairs.extend(std::iter::repeat((i as u32, n2 + 1 - i as u32)).take(b[sp.barred(i)] as usize));
        }
        while pairs.len() < self.s as usize {
            pairs.push((1, 1));
        }
        let (cols, rows) = commute_pairs(&pairs, n2);
        self.from_column_row(&letter_counts(&cols, n2), &letter_counts(&rows, n2))
    }
}

/// `R: i (x) j^v -> j'^v (x) i'` on single letters of `A_{N-1}^(1)`.
pub fn commute_letter(i: u32, j: u32, big_n: u32) -> (u32, u32) {
    if i != j {
        (j, i)
    } else if i < big_n {
        (i + 1, i + 1)
    } else {
        (1, 1)
    }
}

/// Move the column letters of `c_1 (x) r_1 (x) c_2 (x) r_2 ...` to the left.
fn commute_pairs(pairs: &[(u32, u32)], big_n: u32) -> (Vec<u32>, Vec<u32>) {
    let mut cols = Vec::with_capacity(pairs.len());
    let mut rows: Vec<u32> = Vec::with_capacity(pairs.len());
    for &(c, r) in pairs {
        let mut c = c;
        for slot in rows.iter_mut().rev() {
            let (c2, r2) = commute_letter(*slot, c, big_n);
            *slot = r2;
            c = c2;
        }
        cols.push(c);
        rows.push(r);
    }
    (cols, rows)
}

fn letter_counts(word: &[u32], big_n: u32) -> Vec<u32> {
    let mut out = vec![0; big_n as usize];
    for &l in word {
        out[l as usize - 1] += 1;
    }
    out
}

/// Letterwise `R` on counts of `B^{1,s} (x) B^{N-1,s}`, returning `(yv', y')`.
///
/// The row is read `1 <= ... <= N`, the column `N^v <= ... <= 1^v`, and each
/// column letter is commuted left through the row one letter at a time. This
/// is the true `R` for `s = 1` only: for larger `s` the composite can leave the
/// component of `B^{N-1,s} (x) B^{1,s}`.
pub fn commute_words(y: &[u32], yv: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let big_n = y.len() as u32;
    let mut rows: Vec<u32> = (1..=big_n).flat_map(|l| std::iter::repeat(l).take(y[l as usize - 1] as usize)).collect();
    let mut cols = Vec::new();
    for l in (1..=big_n).rev() {
        for _ in 0..yv[l as usize - 1] {
            let mut c = l;
            for slot in rows.iter_mut().rev() {
                let (c2, r2) = commute_letter(*slot, c, big_n);
                *slot = r2;
                c = c2;
            }
            cols.push(c);
        }
    }
    (letter_counts(&cols, big_n), letter_counts(&rows, big_n))
}

/// Self-duality `b^{v*} = R(b)` through the count identities, with `y_{2n+1} = y_1`.
pub fn is_self_dual(yv: &[u32], y: &[u32]) -> bool {
    let n2 = y.len();
    let m = |i: usize| y[(i - 1) % n2].min(yv[(i - 1) % n2]);
    (1..=n2).all(|i| {
        let shift = m(i + 1) as i64 - m(i) as i64;
        y[n2 - i] as i64 == yv[i - 1] as i64 + shift && yv[n2 - i] as i64 == y[i - 1] as i64 + shift
    })
}

/// Self-duality checked directly: `R(b^{v*}) = b` with `R` from the energy module.
pub fn is_self_dual_by_r(cache: &EnergyCache, row: &VirtualRow, v: &[u32]) -> Result<bool> {
    let (col_spec, row_spec) = (row.specs[0], row.specs[1]);
    let (yv, y) = row.column_row_counts(v);
    let (r, c) = star_dual_counts(&yv, &y);
    let rm = cache.rmap(row_spec, col_spec)?;
    let (rt, ct) = (cache.table(row_spec), cache.table(col_spec));
    let (Some(ri), Some(ci)) = (rt.find(&r), ct.find(&c)) else {
        return Err(Error::Inconsistent("dual star leaves the ambient crystal".into()));
    };
    let (c2, r2) = rm.apply(ri, ci);
    Ok([c2, r2] == v[..])
}

/// `b^*` of `b = yv (x) y` as `(row counts, column counts)`: letters `i -> N + 1 - i`
/// and the factors swapped.
pub fn star_counts(yv: &[u32], y: &[u32]) -> (Vec<u32>, Vec<u32>) {
    (reversed(y), reversed(yv))
}

/// `f_i(b^*) = e_{sigma(i)}(b)^*` with `sigma(i) = N - i mod N`.
pub fn star_node(i: usize, big_n: usize) -> usize {
    (big_n - i) % big_n
}

/// `b^v` of `b = yv (x) y`, again a column dual followed by a row.
pub fn dual_counts(yv: &[u32], y: &[u32]) -> (Vec<u32>, Vec<u32>) {
    (y.to_vec(), yv.to_vec())
}

/// `b^{v*}` of `b = yv (x) y` as `(row counts, column counts)` of `B^{1,s} (x) B^{N-1,s}`.
pub fn star_dual_counts(yv: &[u32], y: &[u32]) -> (Vec<u32>, Vec<u32>) {
    (reversed(yv), reversed(y))
}

/// The letter involution `i -> N + 1 - i` on counts.
pub fn reversed(c: &[u32]) -> Vec<u32> {
    c.iter().rev().copied().collect()
}

/// `eps_0` predicted for a self-dual element.
pub fn even_zero_eps(yv: &[u32], y: &[u32]) -> u32 {
    2 * y[0] - y[0].min(yv[0])
}

/// The first half of the explicit A-chain counts, `(yv_i, y_i)` for `i <= n`.
pub fn xy_counts(spec: KrSpec, b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = spec.rank();
    let x = |i: usize| b[spec.unbarred(i)] as i64;
    let xb = |i: usize| b[spec.barred(i)] as i64;
    let circ = if spec.letters() % 2 == 1 { b[spec.circ()] as i64 } else { 0 };
    let total: i64 = (1..=n).map(|i| x(i) + xb(i)).sum();
    let pad = spec.s as i64 - circ - total;
    let mut y = Vec::with_capacity(n);
    let mut yv = Vec::with_capacity(n);
    for i in 1..=n {
        let m = x(i).min(xb(i));
        let carry = if i == 1 { pad } else { x(i - 1).min(xb(i - 1)) };
        y.push((x(i) - m + carry) as u32);
        yv.push((xb(i) - m + carry) as u32);
    }
    (yv, y)
}

/// All of `(yv, y)`: the explicit counts for `i <= n`, completed through
/// self-duality and the total `s`.
pub fn xy_full_counts(spec: KrSpec, b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = spec.rank();
    let (lv, l) = xy_counts(spec, b);
    let m = |i: usize| l[i - 1].min(lv[i - 1]) as i64;
    let mut y: Vec<i64> = l.iter().map(|&c| c as i64).collect();
    let mut yv: Vec<i64> = lv.iter().map(|&c| c as i64).collect();
    y.resize(2 * n, 0);
    yv.resize(2 * n, 0);
    // y_{2n+1-i} for i < n
    for i in 1..n {
        y[2 * n - i] = lv[i - 1] as i64 - m(i) + m(i + 1);
        yv[2 * n - i] = l[i - 1] as i64 - m(i) + m(i + 1);
    }
    let rest = spec.s as i64 - y.iter().sum::<i64>();
    // y_{n+1} = yv_n - m_n + t and yv_{n+1} = y_n - m_n + t
    let t = rest - (lv[n - 1] as i64 - m(n));
    y[n] = lv[n - 1] as i64 - m(n) + t;
    yv[n] = l[n - 1] as i64 - m(n) + t;
    let clip = |v: Vec<i64>| v.into_iter().map(|c| c.max(0) as u32).collect();
    (clip(yv), clip(y))
}

/// Outcome of the checks on one `V^{1,s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualReport {
    #[serde(rename = "type")]
    pub ctype: String,
    pub s: u32,
    pub size: usize,
    pub predicate_match: bool,
    pub isomorphism_ok: bool,
    pub aligned_ok: bool,
    /// `None` when outside the energy budget.
    pub xv_equals_x: Option<bool>,
}

impl VirtualReport {
    pub fn passed(&self) -> bool {
        self.predicate_match && self.isomorphism_ok && self.aligned_ok && self.xv_equals_x != Some(false)
    }
}

/// `embed` is a bijection `B^{1,s} -> V` intertwining `e_i, f_i` with the hat operators.
pub fn check_isomorphism(row: &VirtualRow, table: &CrystalTable, v: &[Vec<u32>]) -> bool {
    let images: Option<Vec<Vec<u32>>> = table.keys.iter().map(|b| row.embed(b)).collect();
    let Some(images) = images else { return false };
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted != v || images.len() != v.len() {
        return false;
    }
    if images[table.highest as usize] != row.highest() {
        return false;
    }
    (0..table.len()).all(|b| {
        (0..row.x_nodes()).all(|i| {
            let up = table.e[i][b].map(|c| images[c as usize].clone());
            let down = table.f[i][b].map(|c| images[c as usize].clone());
            row.ehat(&images[b], i) == up && row.fhat(&images[b], i) == down
        })
    })
}

/// `X^v(V, lambda)` for `V^{1,s_1} (x) ... (x) V^{1,s_L}`, widths left to right.
///
/// Paths are the classically highest elements of weight `Psi(lambda)` with each
/// block in its `V`. Their energy is the ambient intrinsic energy over `gamma_0`.
pub fn xv_polynomial(cache: &EnergyCache, x: AffineType, widths: &[u32], lambda: &Weight, cap: usize) -> Result<QPolynomial> {
    let rows: Vec<VirtualRow> = widths
        .iter()
        .map(|&s| VirtualRow::new(&cache.tables, x, s))
        .collect::<Result<_>>()?;
    let mut blocks = Vec::with_capacity(rows.len());
    let mut members = Vec::with_capacity(rows.len());
    for r in &rows {
        let t = Arc::new(CrystalTable::from_tensor(&r.crystal, cap)?);
        let v: HashSet<Vec<u32>> = r.generate(cap)?.into_iter().collect();
        members.push((0..t.len()).map(|b| v.contains(&t.keys[b])).collect::<Vec<bool>>());
        blocks.push(t);
    }
    let emb = &rows[0].emb;
    let gamma0 = emb.gamma[0] as i64;
    let specs: Vec<KrSpec> = rows.iter().flat_map(|r| r.specs.iter().copied()).collect();
    let energy = cache.tensor(&specs)?;
    let tensor = TensorCrystal::new(blocks.clone());
    let mut out = QPolynomial::zero();
    for path in tensor.restricted_paths_in(&emb.psi_weight(lambda), |k, b| members[k][b as usize]) {
        let flat: Vec<u32> = path
            .iter()
            .zip(&blocks)
            .flat_map(|(&b, t)| t.keys[b as usize].iter().copied())
            .collect();
        let d = energy.intrinsic(&flat)?;
        if d % gamma0 != 0 {
            return Err(Error::Conjecture(format!(
                "virtual energy {d} of {} is not divisible by {gamma0}",
                energy.crystal.label(&flat)
            )));
        }
        out.add_term((d / gamma0).into(), 1.into());
    }
    Ok(out)
}

/// Apply the ambient `R` to move a `V^{1,t}` block left past a `V^{1,s}` block
/// and report whether every image lands in `V^{1,t} (x) V^{1,s}`.
pub fn rhat_closed(cache: &EnergyCache, x: AffineType, s: u32, t: u32, cap: usize) -> Result<bool> {
    let left = VirtualRow::new(&cache.tables, x, s)?;
    let right = VirtualRow::new(&cache.tables, x, t)?;
    let vl = left.generate(cap)?;
    let vr = right.generate(cap)?;
    let in_l: HashSet<&Vec<u32>> = vl.iter().collect();
    let in_r: HashSet<&Vec<u32>> = vr.iter().collect();
    let m = left.specs.len();
    for a in &vl {
        for b in &vr {
            let mut specs: Vec<KrSpec> = left.specs.iter().chain(&right.specs).copied().collect();
            let mut elt: Vec<u32> = a.iter().chain(b).copied().collect();
            for k in 0..m {
                for step in 0..m {
                    cache.swap(&mut specs, &mut elt, m + k - 1 - step)?;
                }
            }
            if !in_r.contains(&elt[..m].to_vec()) || !in_l.contains(&elt[m..].to_vec()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every check on `V^{1,s}` of `X`. `X^v = X` is compared on `B^{1,s}` and
/// `B^{1,s} (x) B^{1,1}` when `xv_width` allows.
pub fn verify_row(cache: &EnergyCache, x: AffineType, s: u32, xv_width: u32, cap: usize) -> Result<VirtualReport> {
    let row = VirtualRow::new(&cache.tables, x, s)?;
    let v = row.generate(cap)?;
    let predicate_match = row.predicate_set(cap)? == v;
    let aligned_ok = v.iter().all(|b| row.is_aligned(b));
    let table = row.x_spec().table();
    let isomorphism_ok = check_isomorphism(&row, &table, &v);
    let xv_equals_x = if s <= xv_width {
        let mut ok = true;
        for widths in [vec![s], vec![s, 1]] {
            let xspecs: Vec<KrSpec> = widths.iter().map(|&w| KrSpec::new(x, 1, w)).collect::<Result<_>>()?;
            let top = crate::config::TensorSpec::from_factors(&widths.iter().map(|&w| (1, w)).collect::<Vec<_>>())
                .top_weight(x.rank());
            for lambda in dynkin_data(x).dominant_weights_below(&top) {
                let xv = xv_polynomial(cache, x, &widths, &lambda, cap)?;
                ok &= xv == x_polynomial(cache, &xspecs, &lambda)?;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(VirtualReport {
        ctype: x.label(),
        s,
        size: v.len(),
        predicate_match,
        isomorphism_ok,
        aligned_ok,
        xv_equals_x,
    })
}
