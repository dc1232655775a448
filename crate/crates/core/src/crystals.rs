//! Kirillov-Reshetikhin crystals `B^{1,s}`, type A column duals, tensor
//! products and crystal graphs.
//!
//! Tensor products follow the convention
//! `e_i(b1 (x) b2) = e_i b1 (x) b2` if `eps_i(b1) > phi_i(b2)`, else `b1 (x) e_i b2`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::{dynkin_data, AffineType, Family, Weight};

/// Which classical alphabet the row words are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Alphabet {
    /// `1 < 2 < ... < N` for `A_{N-1}`.
    A,
    /// `1 < ... < n < 0 < n' < ... < 1'`, at most one `0`.
    B,
    C,
    /// Never both `n` and `n'`.
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum KrKind {
    /// `B^{1,s}`.
    Row,
    /// `B^{N-1,s}` of `A_{N-1}^(1)`, realised as the dual of the row crystal.
    ColumnDual,
}

/// A crystal `B^{1,s}` or a type A column dual `B^{N-1,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KrSpec {
    pub ctype: AffineType,
    pub kind: KrKind,
    pub s: u32,
}

/// A word given by its letter counts.
pub type Counts = Vec<u32>;

impl KrSpec {
    pub fn new(ctype: AffineType, r: usize, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidType("crystal width must be positive".into()));
        }
        if ctype.is_exceptional() {
            return Err(Error::Unsupported(format!("no crystal model for {ctype}")));
        }
        if ctype.family() == Family::A2EvenDagger && ctype.rank() == 1 {
            return Err(Error::Unsupported(format!("no row crystal model for {ctype}")));
        }
        let kind = match (ctype.family(), r) {
            (_, 1) => KrKind::Row,
            (Family::A1, r) if r == ctype.rank() => KrKind::ColumnDual,
            _ => {
                return Err(Error::Unsupported(format!(
                    "crystal B^{{{r},{s}}} of {ctype}: only rows and type A column duals are modelled"
                )))
            }
        };
        Ok(KrSpec { ctype, kind, s })
    }

    /// The column dual `B^{N-1,s}` of `A_{N-1}^(1)`, also for `N = 2`.
    pub fn column_dual(ctype: AffineType, s: u32) -> Result<Self> {
        if ctype.family() != Family::A1 {
            return Err(Error::Unsupported(format!("column duals exist only in type A, got {ctype}")));
        }
        Ok(KrSpec {
            ctype,
            kind: KrKind::ColumnDual,
            s,
        })
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank()
    }

    /// The node `r` of `B^{r,s}`.
    pub fn node(&self) -> usize {
        match self.kind {
            KrKind::Row => 1,
            KrKind::ColumnDual => self.rank(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self.ctype.family() {
            Family::A1 => Alphabet::A,
            Family::B1 | Family::A2EvenDagger | Family::D2 => Alphabet::B,
            Family::C1 | Family::A2Even | Family::A2Odd => Alphabet::C,
            Family::D1 => Alphabet::D,
            _ => unreachable!("exceptional types are rejected on construction"),
        }
    }

    /// Number of letters.
    pub fn letters(&self) -> usize {
        let n = self.rank();
        match self.alphabet() {
            Alphabet::A => n + 1,
            Alphabet::B => 2 * n + 1,
            Alphabet::C | Alphabet::D => 2 * n,
        }
    }

    /// Word lengths that occur.
    pub fn lengths(&self) -> Vec<u32> {
        let s = self.s;
        match self.ctype.family() {
            Family::C1 | Family::A2EvenDagger => (0..=s).filter(|k| (s - k) % 2 == 0).collect(),
            Family::A2Even | Family::D2 => (0..=s).collect(),
            _ => vec![s],
        }
    }

    /// Index of letter `i` (`1..=n`).
    pub fn unbarred(&self, i: usize) -> usize {
        i - 1
    }

    /// Index of letter `i'` (`1..=n`).
    pub fn barred(&self, i: usize) -> usize {
        self.letters() - i
    }

    /// Index of the letter `0` in type B.
    pub fn circ(&self) -> usize {
        self.rank()
    }

    pub fn is_valid(&self, b: &[u32]) -> bool {
        if b.len() != self.letters() {
            return false;
        }
        let len: u32 = b.iter().sum();
        if !self.lengths().contains(&len) {
            return false;
        }
        let n = self.rank();
        match self.alphabet() {
            Alphabet::B => b[self.circ()] <= 1,
            Alphabet::D => b[self.unbarred(n)] == 0 || b[self.barred(n)] == 0,
            _ => true,
        }
    }

    /// Every element of the underlying set.
    pub fn elements(&self) -> Vec<Counts> {
        fn rec(k: usize, left: u32, cur: &mut Counts, out: &mut Vec<Counts>) {
            if k + 1 == cur.len() {
                cur[k] = left;
                out.push(cur.clone());
                return;
            }
            for x in 0..=left {
                cur[k] = x;
                rec(k + 1, left - x, cur, out);
            }
        }
        let mut out = Vec::new();
        for len in self.lengths() {
            let mut cur = vec![0; self.letters()];
            rec(0, len, &mut cur, &mut out);
        }
        out.retain(|b| self.is_valid(b));
        out.sort();
        out
    }

    /// The classical highest weight element `u(B)`.
    pub fn highest(&self) -> Counts {
        let mut b = vec![0; self.letters()];
        match self.kind {
            KrKind::Row => b[0] = self.s,
            KrKind::ColumnDual => b[self.letters() - 1] = self.s,
        }
        b
    }

    fn moved(&self, b: &[u32], dec: &[usize], inc: &[usize]) -> Option<Counts> {
        let mut out = b.to_vec();
        for &k in dec {
            if out[k] == 0 {
                return None;
            }
            out[k] -= 1;
        }
        for &k in inc {
            out[k] += 1;
        }
        self.is_valid(&out).then_some(out)
    }

    /// The raising operator `e_i`, `i` in `0..=n`.
    pub fn raise(&self, b: &[u32], i: usize) -> Option<Counts> {
        let n = self.rank();
        match self.kind {
            KrKind::Row if self.alphabet() == Alphabet::A => {
                // letters 1..N; node 0 turns a 1 into an N
                if i == 0 {
                    self.moved(b, &[0], &[n])
                } else {
                    self.moved(b, &[i], &[i - 1])
                }
            }
            KrKind::ColumnDual => {
                if i == 0 {
                    self.moved(b, &[n], &[0])
                } else {
                    self.moved(b, &[i - 1], &[i])
                }
            }
            KrKind::Row => {
                if i == 0 {
                    self.raise_zero(b)
                } else {
                    self.raise_classical(b, i)
                }
            }
        }
    }

    fn raise_classical(&self, b: &[u32], i: usize) -> Option<Counts> {
        let n = self.rank();
        let (x, xb) = (|k: usize| self.unbarred(k), |k: usize| self.barred(k));
        if i < n {
            return if b[x(i + 1)] > b[xb(i + 1)] {
                self.moved(b, &[x(i + 1)], &[x(i)])
            } else {
                self.moved(b, &[xb(i)], &[xb(i + 1)])
            };
        }
        match self.alphabet() {
            Alphabet::B => {
                if b[self.circ()] == 0 {
                    self.moved(b, &[xb(n)], &[self.circ()])
                } else {
                    self.moved(b, &[self.circ()], &[x(n)])
                }
            }
            Alphabet::C => self.moved(b, &[xb(n)], &[x(n)]),
            Alphabet::D => {
                if b[xb(n)] > 0 {
                    self.moved(b, &[xb(n)], &[x(n - 1)])
                } else {
                    self.moved(b, &[xb(n - 1)], &[x(n)])
                }
            }
            Alphabet::A => unreachable!(),
        }
    }

    /// `e_{n-1}` of type D uses its own rule.
    fn raise_d_second_last(&self, b: &[u32]) -> Option<Counts> {
        let n = self.rank();
        let (x, xb) = (|k: usize| self.unbarred(k), |k: usize| self.barred(k));
        if b[x(n)] > 0 {
            self.moved(b, &[x(n)], &[x(n - 1)])
        } else {
            self.moved(b, &[xb(n - 1)], &[xb(n)])
        }
    }

    fn raise_zero(&self, b: &[u32]) -> Option<Counts> {
        let (x, xb) = (|k: usize| self.unbarred(k), |k: usize| self.barred(k));
        match self.ctype.family() {
            Family::B1 | Family::D1 | Family::A2Odd => {
                if b[x(2)] > b[xb(2)] {
                    self.moved(b, &[x(2)], &[xb(1)])
                } else {
                    self.moved(b, &[x(1)], &[xb(2)])
                }
            }
            Family::A2Even | Family::D2 => {
                if b[x(1)] > b[xb(1)] {
                    self.moved(b, &[x(1)], &[])
                } else {
                    self.moved(b, &[], &[xb(1)])
                }
            }
            Family::C1 | Family::A2EvenDagger => {
                let (p, q) = (b[x(1)], b[xb(1)]);
                if p >= q + 2 {
                    self.moved(b, &[x(1), x(1)], &[])
                } else if p == q + 1 {
                    self.moved(b, &[x(1)], &[xb(1)])
                } else {
                    self.moved(b, &[], &[xb(1), xb(1)])
                }
            }
            _ => unreachable!(),
        }
    }

    /// `e_i` with the type D exception at node `n - 1` routed correctly.
    pub fn e(&self, b: &[u32], i: usize) -> Option<Counts> {
        if self.kind == KrKind::Row && self.alphabet() == Alphabet::D && i == self.rank() - 1 {
            return self.raise_d_second_last(b);
        }
        self.raise(b, i)
    }

    /// Every count change that `e_i` can make.
    fn raise_deltas(&self, i: usize) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for b in self.elements() {
            if let Some(c) = self.e(&b, i) {
                let d: Vec<i64> = c.iter().zip(&b).map(|(&p, &q)| p as i64 - q as i64).collect();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// The lowering operator `f_i`, found as the unique preimage under `e_i`.
    pub fn f(&self, b: &[u32], i: usize) -> Option<Counts> {
        self.f_with(b, i, &self.raise_deltas(i))
    }

    fn f_with(&self, b: &[u32], i: usize, deltas: &[Vec<i64>]) -> Option<Counts> {
        let mut found = None;
        for d in deltas {
            let cand: Option<Counts> = b
                .iter()
                .zip(d)
                .map(|(&x, &dx)| u32::try_from(x as i64 - dx).ok())
                .collect();
            let Some(cand) = cand else { continue };
            if self.is_valid(&cand) && self.e(&cand, i).as_deref() == Some(b) {
                assert!(found.is_none() || found.as_ref() == Some(&cand), "e_{i} is not injective");
                found = Some(cand);
            }
        }
        found
    }

    /// Name of the letter with index `k`: `i`, `0`, the barred `i'` or the column letter `i^v`.
    pub fn letter_name(&self, k: usize) -> String {
        let n = self.rank();
        match self.alphabet() {
            Alphabet::A if self.kind == KrKind::ColumnDual => format!("{}^v", k + 1),
            Alphabet::A => (k + 1).to_string(),
            _ if k < n => (k + 1).to_string(),
            Alphabet::B if k == n => "0".into(),
            _ => format!("{}'", self.letters() - k),
        }
    }

    /// The word of `b` in weakly increasing letter order, `()` when empty.
    pub fn word(&self, b: &[u32]) -> String {
        let letters: Vec<String> = b
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat(self.letter_name(k)).take(c as usize))
            .collect();
        if letters.is_empty() {
            "()".into()
        } else {
            letters.join(" ")
        }
    }

    pub fn label(&self) -> String {
        let kind = match self.kind {
            KrKind::Row => format!("B^{{1,{}}}", self.s),
            KrKind::ColumnDual => format!("B^{{{},{}}}", self.rank(), self.s),
        };
        format!("{kind} of {}", self.ctype)
    }

    /// Build the full operator table.
    pub fn table(&self) -> CrystalTable {
        let elements = self.elements();
        let n = self.rank();
        let index: HashMap<Vec<u32>, u32> = elements.iter().enumerate().map(|(k, b)| (b.clone(), k as u32)).collect();
        let mut e = vec![vec![None; elements.len()]; n + 1];
        for (i, row) in e.iter_mut().enumerate() {
            for (k, b) in elements.iter().enumerate() {
                row[k] = self.e(b, i).map(|c| index[&c]);
            }
        }
        let labels = elements.iter().map(|b| self.word(b)).collect();
        let hw = index[&self.highest()];
        CrystalTable::from_raising(self.label(), self.ctype, elements, labels, e, hw)
            .expect("row crystal operators are partial bijections")
    }
}


/// A finite crystal with all operators tabulated. Element `k` is `keys[k]`.
#[derive(Clone, Debug)]
pub struct CrystalTable {
    pub name: String,
    pub ctype: AffineType,
    pub keys: Vec<Vec<u32>>,
    pub labels: Vec<String>,
    index: HashMap<Vec<u32>, u32>,
    pub e: Vec<Vec<Option<u32>>>,
    pub f: Vec<Vec<Option<u32>>>,
    pub eps: Vec<Vec<u32>>,
    pub phi: Vec<Vec<u32>>,
    pub highest: u32,
}

impl CrystalTable {
    /// Complete a table from its raising operators.
    pub fn from_raising(
        name: String,
        ctype: AffineType,
        keys: Vec<Vec<u32>>,
        labels: Vec<String>,
        e: Vec<Vec<Option<u32>>>,
        highest: u32,
    ) -> Result<Self> {
        let len = keys.len();
        let mut f = vec![vec![None; len]; e.len()];
        for (i, row) in e.iter().enumerate() {
            for (b, &t) in row.iter().enumerate() {
                if let Some(t) = t {
                    if f[i][t as usize].is_some() {
                        return Err(Error::Inconsistent(format!("e_{i} is not injective on {name}")));
                    }
                    f[i][t as usize] = Some(b as u32);
                }
            }
        }
        let string_len = |ops: &Vec<Vec<Option<u32>>>| -> Result<Vec<Vec<u32>>> {
            ops.iter()
                .enumerate()
                .map(|(i, row)| {
                    (0..len)
                        .map(|b| {
                            let mut k = 0;
                            let mut cur = b as u32;
                            while let Some(nx) = row[cur as usize] {
                                k += 1;
                                cur = nx;
                                if k > len {
                                    return Err(Error::Inconsistent(format!("e_{i} or f_{i} cycles on {name}")));
                                }
                            }
                            Ok(k as u32)
                        })
                        .collect()
                })
                .collect()
        };
        let eps = string_len(&e)?;
        let phi = string_len(&f)?;
        let index = keys.iter().enumerate().map(|(k, b)| (b.clone(), k as u32)).collect();
        Ok(CrystalTable {
            name,
            ctype,
            keys,
            labels,
            index,
            e,
            f,
            eps,
            phi,
            highest,
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Number of nodes including 0.
    pub fn nodes(&self) -> usize {
        self.e.len()
    }

    pub fn find(&self, key: &[u32]) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// Classical weight `sum_i (phi_i - eps_i) Lambda_i`.
    pub fn weight(&self, b: u32) -> Weight {
        Weight(
            (1..self.nodes())
                .map(|i| self.phi[i][b as usize] as i64 - self.eps[i][b as usize] as i64)
                .collect(),
        )
    }

    pub fn is_classical_highest(&self, b: u32) -> bool {
        (1..self.nodes()).all(|i| self.eps[i][b as usize] == 0)
    }

    /// `min_b sum_i a_i^dual eps_i(b)`.
    pub fn level(&self) -> i64 {
        let ad = dynkin_data(self.ctype).a_dual;
        (0..self.len())
            .map(|b| (0..self.nodes()).map(|i| ad[i] * self.eps[i][b] as i64).sum::<i64>())
            .min()
            .unwrap_or(0)
    }

    /// The dual crystal: arrows reversed, same element indices.
    pub fn dual(&self) -> CrystalTable {
        let lowest = (0..self.len() as u32)
            .find(|&b| (1..self.nodes()).all(|i| self.phi[i][b as usize] == 0)
                && self.weight(b) == -&self.weight(self.highest))
            .unwrap_or(self.highest);
        CrystalTable {
            name: format!("({})^dual", self.name),
            ctype: self.ctype,
            keys: self.keys.clone(),
            labels: self
                .labels
                .iter()
                .map(|l| l.split(' ').map(|x| format!("{x}^v")).collect::<Vec<_>>().join(" "))
                .collect(),
            index: self.index.clone(),
            e: self.f.clone(),
            f: self.e.clone(),
            eps: self.phi.clone(),
            phi: self.eps.clone(),
            highest: lowest,
        }
    }

    /// Tabulate a tensor product of tables.
    pub fn from_tensor(t: &TensorCrystal, cap: usize) -> Result<CrystalTable> {
        let keys = t.elements(cap)?;
        let index: HashMap<Vec<u32>, u32> = keys.iter().enumerate().map(|(k, b)| (b.clone(), k as u32)).collect();
        let nodes = t.nodes();
        let e = (0..nodes)
            .map(|i| keys.iter().map(|b| t.e(b, i).map(|c| index[&c])).collect())
            .collect();
        let labels = keys.iter().map(|b| t.label(b)).collect();
        let hw = index[&t.highest()];
        CrystalTable::from_raising(t.name(), t.ctype(), keys, labels, e, hw)
    }
}

/// A tensor product `B_1 (x) ... (x) B_L` written left to right.
#[derive(Clone, Debug)]
pub struct TensorCrystal {
    pub factors: Vec<Arc<CrystalTable>>,
}

impl TensorCrystal {
    pub fn new(factors: Vec<Arc<CrystalTable>>) -> Self {
        assert!(!factors.is_empty(), "empty tensor product");
        TensorCrystal { factors }
    }

    pub fn nodes(&self) -> usize {
        self.factors[0].nodes()
    }

    pub fn ctype(&self) -> AffineType {
        self.factors[0].ctype
    }

    pub fn name(&self) -> String {
        let v: Vec<&str> = self.factors.iter().map(|f| f.name.as_str()).collect();
        v.join(" (x) ")
    }

    pub fn label(&self, b: &[u32]) -> String {
        let v: Vec<&str> = b
            .iter()
            .zip(&self.factors)
            .map(|(&x, f)| f.labels[x as usize].as_str())
            .collect();
        v.join(" (x) ")
    }

    pub fn highest(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.highest).collect()
    }

    pub fn size(&self) -> usize {
        self.factors.iter().map(|f| f.len()).product()
    }

    /// All elements in lexicographic order of factor indices.
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        let size = self.size();
        if size > cap {
            return Err(Error::Resource {
                what: format!("tensor product of size {size}"),
                cap,
            });
        }
        let mut out = vec![Vec::new()];
        for f in &self.factors {
            let mut next = Vec::with_capacity(out.len() * f.len());
            for b in &out {
                for k in 0..f.len() as u32 {
                    let mut c: Vec<u32> = b.clone();
                    c.push(k);
                    next.push(c);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Reduced signature: `(factor hit by e_i, factor hit by f_i, eps_i, phi_i)`.
    fn signature(&self, b: &[u32], i: usize) -> (Option<usize>, Option<usize>, u32, u32) {
        let mut pluses: Vec<usize> = Vec::new();
        let mut minus_at = None;
        let mut minuses = 0u32;
        for k in (0..b.len()).rev() {
            let t = &self.factors[k];
            let (eps, phi) = (t.eps[i][b[k] as usize], t.phi[i][b[k] as usize]);
            for _ in 0..eps {
                if pluses.pop().is_none() {
                    minuses += 1;
                    minus_at = Some(k);
                }
            }
            for _ in 0..phi {
                pluses.push(k);
            }
        }
        (minus_at, pluses.first().copied(), minuses, pluses.len() as u32)
    }

    pub fn e(&self, b: &[u32], i: usize) -> Option<Vec<u32>> {
        let (k, _, _, _) = self.signature(b, i);
        let k = k?;
        let mut out = b.to_vec();
        out[k] = self.factors[k].e[i][b[k] as usize]?;
        Some(out)
    }

    pub fn f(&self, b: &[u32], i: usize) -> Option<Vec<u32>> {
        let (_, k, _, _) = self.signature(b, i);
        let k = k?;
        let mut out = b.to_vec();
        out[k] = self.factors[k].f[i][b[k] as usize]?;
        Some(out)
    }

    pub fn eps(&self, b: &[u32], i: usize) -> u32 {
        self.signature(b, i).2
    }

    pub fn phi(&self, b: &[u32], i: usize) -> u32 {
        self.signature(b, i).3
    }

    pub fn weight(&self, b: &[u32]) -> Weight {
        let n = self.nodes() - 1;
        let mut w = Weight::zero(n);
        for (k, &x) in b.iter().enumerate() {
            w = &w + &self.factors[k].weight(x);
        }
        w
    }

    pub fn is_classical_highest(&self, b: &[u32]) -> bool {
        (1..self.nodes()).all(|i| self.eps(b, i) == 0)
    }

    /// Classically restricted paths of weight `lambda`, sorted.
    ///
    /// Built from the right: the rightmost factor is classically highest and
    /// each new left factor `b` needs `eps_i(b) <= phi_i(rest)`.
    pub fn restricted_paths(&self, lambda: &Weight) -> Vec<Vec<u32>> {
        self.restricted_paths_in(lambda, |_, _| true)
    }

    /// Restricted paths whose factor `k` satisfies `allowed(k, b_k)`.
    pub fn restricted_paths_in(&self, lambda: &Weight, allowed: impl Fn(usize, u32) -> bool) -> Vec<Vec<u32>> {
        let n = self.nodes() - 1;
        let last = self.factors.len() - 1;
        let mut partial: Vec<(Vec<u32>, Weight)> = (0..self.factors[last].len() as u32)
            .filter(|&b| allowed(last, b) && self.factors[last].is_classical_highest(b))
            .map(|b| (vec![b], self.factors[last].weight(b)))
            .collect();
        for k in (0..last).rev() {
            let t = &self.factors[k];
            let mut next = Vec::new();
            for (rest, w) in &partial {
                for b in 0..t.len() as u32 {
                    if allowed(k, b) && (1..=n).all(|i| t.eps[i][b as usize] as i64 <= w.0[i - 1]) {
                        let mut v = vec![b];
                        v.extend_from_slice(rest);
                        next.push((v, w + &t.weight(b)));
                    }
                }
            }
            partial = next;
        }
        let mut out: Vec<Vec<u32>> = partial.into_iter().filter(|(_, w)| w == lambda).map(|(b, _)| b).collect();
        out.sort();
        out
    }
}

/// The crystal graph of a tensor product, found by closure from `u(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrystalGraph {
    pub name: String,
    pub vertices: Vec<String>,
    /// `(source, node, target)` with `f_node(source) = target`.
    pub arcs: Vec<(usize, usize, usize)>,
    pub highest: usize,
    #[serde(skip)]
    pub keys: Vec<Vec<u32>>,
}

pub fn generate_graph(t: &TensorCrystal, cap: usize) -> Result<CrystalGraph> {
    let start = t.highest();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut keys = vec![start.clone()];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut arcs = Vec::new();
    while let Some(v) = queue.pop_front() {
        let b = keys[v].clone();
        for i in 0..t.nodes() {
            for (up, next) in [(false, t.f(&b, i)), (true, t.e(&b, i))] {
                let Some(c) = next else { continue };
                let w = match index.get(&c) {
                    Some(&w) => w,
                    None => {
                        if keys.len() >= cap {
                            return Err(Error::Resource {
                                what: "crystal graph vertices".into(),
                                cap,
                            });
                        }
                        keys.push(c.clone());
                        index.insert(c, keys.len() - 1);
                        queue.push_back(keys.len() - 1);
                        keys.len() - 1
                    }
                };
                if !up {
                    arcs.push((v, i, w));
                }
            }
        }
    }
    arcs.sort();
    Ok(CrystalGraph {
        name: t.name(),
        vertices: keys.iter().map(|b| t.label(b)).collect(),
        arcs,
        highest: 0,
        keys,
    })
}

impl CrystalGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{k} [label=\"{v}\"];\n"));
        }
        for (a, i, b) in &self.arcs {
            s.push_str(&format!("  v{a} -> v{b} [label=\"{i}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Cached tables of single `B^{1,s}` or column-dual crystals.
#[derive(Default)]
pub struct TableCache {
    tables: std::sync::Mutex<HashMap<KrSpec, Arc<CrystalTable>>>,
}

impl TableCache {
    pub fn get(&self, spec: KrSpec) -> Arc<CrystalTable> {
        if let Some(t) = self.tables.lock().expect("table cache lock").get(&spec) {
            return t.clone();
        }
        let t = Arc::new(spec.table());
        self.tables
            .lock()
            .expect("table cache lock")
            .entry(spec)
            .or_insert(t)
            .clone()
    }
}
