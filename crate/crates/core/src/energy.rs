//! Combinatorial R-matrices, local and intrinsic energies, one-dimensional sums.
//!
//! A tensor element is a vector of factor indices read left to right. Energy
//! formulas number positions from the right: position `p` of an `L`-fold
//! tensor is vector index `L - p`. The local energy `H` of a pair is stored on
//! the domain `B2 (x) B1` of `R: B2 (x) B1 -> B1 (x) B2`.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::crystals::{CrystalTable, KrSpec, TableCache, TensorCrystal};
use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;
use crate::root_data::Weight;

/// `R: B2 (x) B1 -> B1 (x) B2` with the local energy on `B2 (x) B1`.
#[derive(Clone, Debug)]
pub struct RMap {
    pub left: Arc<CrystalTable>,
    pub right: Arc<CrystalTable>,
    /// `image[l * |B1| + r] = (r', l')`.
    pub image: Vec<(u32, u32)>,
    pub h: Vec<i64>,
}

impl RMap {
    /// Find `R` as the digraph isomorphism seeded at `u (x) u` and propagate `H`.
    pub fn compute(left: Arc<CrystalTable>, right: Arc<CrystalTable>) -> Result<RMap> {
        let dom = TensorCrystal::new(vec![left.clone(), right.clone()]);
        let cod = TensorCrystal::new(vec![right.clone(), left.clone()]);
        let nr = right.len();
        let size = left.len() * nr;
        let key = |b: &[u32]| b[0] as usize * nr + b[1] as usize;
        let mut image: Vec<Option<(Vec<u32>, i64)>> = vec![None; size];
        let start = dom.highest();
        image[key(&start)] = Some((cod.highest(), 0));
        let mut queue = VecDeque::from([start]);
        let mut seen = 1;
        while let Some(b) = queue.pop_front() {
            let (rb, hb) = image[key(&b)].clone().expect("queued elements are mapped");
            for i in 0..dom.nodes() {
                for raise in [true, false] {
                    let (next, rnext) = if raise {
                        (dom.e(&b, i), cod.e(&rb, i))
                    } else {
                        (dom.f(&b, i), cod.f(&rb, i))
                    };
                    let (c, rc) = match (next, rnext) {
                        (None, None) => continue,
                        (Some(c), Some(rc)) => (c, rc),
                        _ => {
                            return Err(Error::Inconsistent(format!(
                                "R seed does not extend on {} at node {i}",
                                dom.name()
                            )))
                        }
                    };
                    let hc = if i != 0 {
                        hb
                    } else if raise {
                        hb + zero_shift(&dom, &b, &cod, &rb)
                    } else {
                        hb - zero_shift(&dom, &c, &cod, &rc)
                    };
                    match &image[key(&c)] {
                        Some((old, hold)) => {
                            if *old != rc {
                                return Err(Error::Inconsistent(format!("R is not well defined on {}", dom.name())));
                            }
                            if *hold != hc {
                                return Err(Error::Inconsistent(format!(
                                    "local energy is path dependent on {}",
                                    dom.name()
                                )));
                            }
                        }
                        None => {
                            image[key(&c)] = Some((rc, hc));
                            seen += 1;
                            queue.push_back(c);
                        }
                    }
                }
            }
        }
        if seen != size {
            return Err(Error::Inconsistent(format!(
                "{} is not connected: reached {seen} of {size}",
                dom.name()
            )));
        }
        let mut out_image = Vec::with_capacity(size);
        let mut h = Vec::with_capacity(size);
        let mut hit = vec![false; size];
        for entry in image {
            let (rb, hb) = entry.expect("all elements reached");
            let slot = rb[0] as usize * left.len() + rb[1] as usize;
            if std::mem::replace(&mut hit[slot], true) {
                return Err(Error::Inconsistent(format!("R is not injective on {}", dom.name())));
            }
            out_image.push((rb[0], rb[1]));
            h.push(hb);
        }
        Ok(RMap {
            left,
            right,
            image: out_image,
            h,
        })
    }

    pub fn apply(&self, l: u32, r: u32) -> (u32, u32) {
        self.image[l as usize * self.right.len() + r as usize]
    }

    pub fn local_energy(&self, l: u32, r: u32) -> i64 {
        self.h[l as usize * self.right.len() + r as usize]
    }

    /// Tables keyed by canonical labels.
    pub fn export(&self) -> RMapExport {
        let mut rows = Vec::with_capacity(self.image.len());
        for l in 0..self.left.len() as u32 {
            for r in 0..self.right.len() as u32 {
                let (r2, l2) = self.apply(l, r);
                rows.push(RMapRow {
                    domain: format!("{} (x) {}", self.left.labels[l as usize], self.right.labels[r as usize]),
                    image: format!("{} (x) {}", self.right.labels[r2 as usize], self.left.labels[l2 as usize]),
                    h: self.local_energy(l, r),
                });
            }
        }
        RMapExport {
            left: self.left.name.clone(),
            right: self.right.name.clone(),
            rows,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RMapRow {
    pub domain: String,
    pub image: String,
    pub h: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RMapExport {
    pub left: String,
    pub right: String,
    pub rows: Vec<RMapRow>,
}

/// Change of `H` from `b` to `e_0 b`: `-1` if `e_0` acts on the left factor on
/// both sides of `R`, `+1` if on the right factor on both sides.
fn zero_shift(dom: &TensorCrystal, b: &[u32], cod: &TensorCrystal, rb: &[u32]) -> i64 {
    let acts_left = |t: &TensorCrystal, x: &[u32]| {
        t.factors[0].eps[0][x[0] as usize] > t.factors[1].phi[0][x[1] as usize]
    };
    match (acts_left(dom, b), acts_left(cod, rb)) {
        (true, true) => -1,
        (false, false) => 1,
        _ => 0,
    }
}

/// Local energy of `B (x) B` where `R` is the identity.
pub fn self_local_energy(b: &Arc<CrystalTable>) -> Result<RMap> {
    RMap::compute(b.clone(), b.clone())
}

/// The element `b` with `phi(b) = lev(B) Lambda_0`, which must be unique.
pub fn find_bnatural(t: &CrystalTable) -> Result<u32> {
    let lev = t.level();
    let hits: Vec<u32> = (0..t.len() as u32)
        .filter(|&b| {
            t.phi[0][b as usize] as i64 == lev && (1..t.nodes()).all(|i| t.phi[i][b as usize] == 0)
        })
        .collect();
    match hits.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::Conjecture(format!(
            "{} has {} candidates for the level {lev} ground element",
            t.name,
            hits.len()
        ))),
    }
}

/// The intrinsic energy of a single factor.
#[derive(Clone, Debug)]
pub struct SiteEnergy {
    pub bnatural: u32,
    pub d: Vec<i64>,
}

impl SiteEnergy {
    pub fn compute(t: &Arc<CrystalTable>, rm: &RMap) -> Result<SiteEnergy> {
        let bn = find_bnatural(t)?;
        let base = rm.local_energy(t.highest, bn);
        let d = (0..t.len() as u32).map(|b| rm.local_energy(b, bn) - base).collect();
        Ok(SiteEnergy { bnatural: bn, d })
    }
}

/// Tables, R-matrices and site energies, each computed once.
#[derive(Default)]
pub struct EnergyCache {
    pub tables: TableCache,
    rmaps: Mutex<HashMap<(KrSpec, KrSpec), Arc<RMap>>>,
    sites: Mutex<HashMap<KrSpec, Arc<SiteEnergy>>>,
}

impl EnergyCache {
    pub fn table(&self, s: KrSpec) -> Arc<CrystalTable> {
        self.tables.get(s)
    }

    /// `R: left (x) right -> right (x) left`.
    pub fn rmap(&self, left: KrSpec, right: KrSpec) -> Result<Arc<RMap>> {
        if let Some(r) = self.rmaps.lock().expect("rmap cache lock").get(&(left, right)) {
            return Ok(r.clone());
        }
        let r = Arc::new(RMap::compute(self.table(left), self.table(right))?);
        Ok(self
            .rmaps
            .lock()
            .expect("rmap cache lock")
            .entry((left, right))
            .or_insert(r)
            .clone())
    }

    pub fn site(&self, s: KrSpec) -> Result<Arc<SiteEnergy>> {
        if let Some(d) = self.sites.lock().expect("site cache lock").get(&s) {
            return Ok(d.clone());
        }
        let d = Arc::new(SiteEnergy::compute(&self.table(s), &*self.rmap(s, s)?)?);
        Ok(self.sites.lock().expect("site cache lock").entry(s).or_insert(d).clone())
    }

    /// Apply `R` to vector positions `l, l + 1`, swapping their specs.
    pub fn swap(&self, specs: &mut [KrSpec], b: &mut [u32], l: usize) -> Result<()> {
        let rm = self.rmap(specs[l], specs[l + 1])?;
        let (x, y) = rm.apply(b[l], b[l + 1]);
        b[l] = x;
        b[l + 1] = y;
        specs.swap(l, l + 1);
        Ok(())
    }

    pub fn tensor(&self, specs: &[KrSpec]) -> Result<TensorEnergy<'_>> {
        TensorEnergy::new(self, specs)
    }
}

/// Intrinsic energy on `B_L (x) ... (x) B_1`, factors given left to right.
pub struct TensorEnergy<'a> {
    cache: &'a EnergyCache,
    pub specs: Vec<KrSpec>,
    pub crystal: TensorCrystal,
    offset: i64,
}

impl<'a> TensorEnergy<'a> {
    fn new(cache: &'a EnergyCache, specs: &[KrSpec]) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::InvalidType("empty tensor product".into()));
        }
        let crystal = TensorCrystal::new(specs.iter().map(|&s| cache.table(s)).collect());
        let mut out = TensorEnergy {
            cache,
            specs: specs.to_vec(),
            crystal,
            offset: 0,
        };
        let u = out.crystal.highest();
        out.offset = out.unnormalized(&u)?;
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    /// `R_p` on positions `p + 1, p` from the right.
    pub fn apply_r(&self, specs: &mut [KrSpec], b: &mut [u32], p: usize) -> Result<()> {
        self.cache.swap(specs, b, specs.len() - p - 1)
    }

    fn h_at(&self, specs: &[KrSpec], b: &[u32], p: usize) -> Result<i64> {
        let l = specs.len() - p - 1;
        let rm = self.cache.rmap(specs[l], specs[l + 1])?;
        Ok(rm.local_energy(b[l], b[l + 1]))
    }

    fn unnormalized(&self, b: &[u32]) -> Result<i64> {
        let len = self.len();
        let mut total = 0;
        for i in 1..len {
            for j in (i + 1)..=len {
                let mut specs = self.specs.clone();
                let mut c = b.to_vec();
                for p in ((i + 1)..j).rev() {
                    self.apply_r(&mut specs, &mut c, p)?;
                }
                total += self.h_at(&specs, &c, i)?;
            }
        }
        for j in 1..=len {
            let mut specs = self.specs.clone();
            let mut c = b.to_vec();
            for p in (1..j).rev() {
                self.apply_r(&mut specs, &mut c, p)?;
            }
            let site = self.cache.site(specs[len - 1])?;
            total += site.d[c[len - 1] as usize];
        }
        Ok(total)
    }

    /// `D_B(b)`, zero on `u(B)`.
    pub fn intrinsic(&self, b: &[u32]) -> Result<i64> {
        Ok(self.unnormalized(b)? - self.offset)
    }

    /// `X(B, lambda; q)`.
    pub fn x_polynomial(&self, lambda: &Weight) -> Result<QPolynomial> {
        let mut x = QPolynomial::zero();
        for b in self.crystal.restricted_paths(lambda) {
            x.add_term(self.intrinsic(&b)?.into(), 1.into());
        }
        Ok(x)
    }

    /// Search for the tensor ground element: `b_j^natural` must be the leftmost
    /// factor of `R_{L-1} ... R_j b`.
    pub fn find_bnatural(&self, cap: usize) -> Result<Option<Vec<u32>>> {
        let len = self.len();
        let targets: Vec<u32> = self
            .specs
            .iter()
            .map(|&s| self.cache.site(s).map(|d| d.bnatural))
            .collect::<Result<_>>()?;
        let mut found = None;
        for b in self.crystal.elements(cap)? {
            let mut ok = true;
            for j in 1..=len {
                let mut specs = self.specs.clone();
                let mut c = b.clone();
                for p in j..len {
                    self.apply_r(&mut specs, &mut c, p)?;
                }
                // position j from the right now sits leftmost
                if c[0] != targets[len - j] {
                    ok = false;
                    break;
                }
            }
            if ok {
                if found.is_some() {
                    return Err(Error::Conjecture("tensor ground element is not unique".into()));
                }
                found = Some(b);
            }
        }
        Ok(found)
    }
}

/// The one-dimensional sum for `B^{1,s}` factors listed left to right.
pub fn x_polynomial(cache: &EnergyCache, specs: &[KrSpec], lambda: &Weight) -> Result<QPolynomial> {
    cache.tensor(specs)?.x_polynomial(lambda)
}
