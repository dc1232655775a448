//! Tensor specifications, configurations and rigged configurations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::Weight;

/// Multiplicities `L_i^(a)` of the factors `B^{a,i}` in a tensor product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorSpec {
    mult: BTreeMap<(usize, u32), u32>,
}

impl TensorSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Count the factors `(r, s)` of a tensor product `B^{r1,s1} (x) B^{r2,s2} (x) ...`.
    pub fn from_factors(factors: &[(usize, u32)]) -> Self {
        let mut spec = Self::new();
        for &(r, s) in factors {
            spec.add(r, s, 1);
        }
        spec
    }

    pub fn add(&mut self, a: usize, i: u32, count: u32) {
        if count > 0 {
            *self.mult.entry((a, i)).or_insert(0) += count;
        }
    }

    pub fn get(&self, a: usize, i: u32) -> u32 {
        self.mult.get(&(a, i)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, u32), u32)> + '_ {
        self.mult.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn max_width(&self) -> u32 {
        self.mult.keys().map(|&(_, i)| i).max().unwrap_or(0)
    }

    pub fn max_node(&self) -> usize {
        self.mult.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    /// `sum_a sum_i i L_i^(a)`.
    pub fn total_width(&self) -> u32 {
        self.iter().map(|((_, i), c)| i * c).sum()
    }

    /// `sum_a sum_i i L_i^(a) Lambda_a`, the weight of the empty configuration.
    pub fn top_weight(&self, n: usize) -> Weight {
        let mut w = Weight::zero(n);
        for ((a, i), c) in self.iter() {
            w.0[a - 1] += (i * c) as i64;
        }
        w
    }

    /// `sum_a Lambda_a sum_{i >= from} L_i^(a)`.
    pub fn tail_weight(&self, n: usize, from: u32) -> Weight {
        let mut w = Weight::zero(n);
        for ((a, i), c) in self.iter() {
            if i >= from {
                w.0[a - 1] += c as i64;
            }
        }
        w
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        match self.mult.keys().find(|&&(a, i)| a == 0 || a > n || i == 0) {
            Some(&(a, i)) => Err(Error::InvalidType(format!(
                "factor B^{{{a},{i}}} does not fit a classical rank of {n}"
            ))),
            None => Ok(()),
        }
    }
}

/// A configuration: one partition per classical node (node `a` at index `a - 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration(pub Vec<Vec<u32>>);

impl Configuration {
    pub fn empty(n: usize) -> Self {
        Configuration(vec![Vec::new(); n])
    }

    /// Builds from row lists in any order.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let mut c = Configuration(rows);
        for p in c.0.iter_mut() {
            p.retain(|&x| x > 0);
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        c
    }

    /// Builds from multiplicities `m[a-1][i] = m_i^(a)`.
    pub fn from_multiplicities(m: &[BTreeMap<u32, u32>]) -> Self {
        Configuration::from_rows(
            m.iter()
                .map(|mm| mm.iter().flat_map(|(&i, &c)| std::iter::repeat(i).take(c as usize)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self, a: usize) -> &[u32] {
        &self.0[a - 1]
    }

    /// `m_i^(a)`.
    pub fn m(&self, a: usize, i: u32) -> u32 {
        self.0[a - 1].iter().filter(|&&x| x == i).count() as u32
    }

    /// Distinct row lengths of node `a` with their multiplicities.
    pub fn multiplicities(&self, a: usize) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &x in &self.0[a - 1] {
            *out.entry(x).or_insert(0) += 1;
        }
        out
    }

    pub fn size(&self, a: usize) -> u32 {
        self.0[a - 1].iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().flat_map(|p| p.first().copied()).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|p| p.is_empty())
    }
}

/// Factors as `r,s` pairs, repeated by multiplicity, e.g. `1,1 1,1 2,1`.
impl fmt::Display for TensorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((a, i), c) in self.iter() {
            for _ in 0..c {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{a},{i}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if p.is_empty() {
                f.write_str("()")?;
            } else {
                let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", s.join(","))?;
            }
        }
        Ok(())
    }
}

/// A configuration with riggings: for every node and row length `i`, the
/// weakly decreasing labels of the `m_i^(a)` rows of that length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RiggedConfiguration {
    pub nu: Configuration,
    pub riggings: Vec<BTreeMap<u32, Vec<u32>>>,
}

impl RiggedConfiguration {
    pub fn unrigged(nu: Configuration) -> Self {
        let riggings = (1..=nu.rank())
            .map(|a| nu.multiplicities(a).into_iter().map(|(i, m)| (i, vec![0; m as usize])).collect())
            .collect();
        RiggedConfiguration { nu, riggings }
    }

    pub fn rigging(&self, a: usize, i: u32) -> &[u32] {
        self.riggings[a - 1].get(&i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `|J^(a)|` summed over all row lengths.
    pub fn rigging_size(&self, a: usize) -> u64 {
        self.riggings[a - 1].values().flatten().map(|&x| x as u64).sum()
    }
}
