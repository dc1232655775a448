//! Diagram embeddings, the virtual Kleber algorithm and virtual rigged configurations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::config::{Configuration, RiggedConfiguration, TensorSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fermionic::{riggings_of, FermionicData};
use crate::kleber::{brute_force_filtered, path_to_config, Candidate, Grower, KleberTree};
use crate::qpoly::{gaussian_binomial, QPolynomial};
use crate::root_data::{dynkin_data, AffineType, Family, Rational, Weight};

/// How a type `X` folds out of a simply-laced type `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingData {
    pub x: AffineType,
    pub y: AffineType,
    /// `orbits[i]` is the set of `Y` nodes that `X` node `i` maps to.
    pub orbits: Vec<Vec<usize>>,
    /// Scaling factor of node `i`.
    pub gamma: Vec<u32>,
    /// Row lengths of node `i` live on multiples of `grid[i]`. Equal to
    /// `gamma` except at node `n` of A_2n^(2), where it is 1.
    pub grid: Vec<u32>,
    pub sigma_order: u32,
}

pub fn embedding(x: AffineType) -> Result<EmbeddingData> {
    let n = x.rank();
    let (y, orbits, gamma, order): (AffineType, Vec<Vec<usize>>, Vec<u32>, u32) = match x.family() {
        Family::C1 | Family::A2Even | Family::A2EvenDagger | Family::D2 => {
            let y = AffineType::new(Family::A1, 2 * n - 1)?;
            let mut orbits = vec![vec![0]];
            for i in 1..n {
                orbits.push(vec![i, 2 * n - i]);
            }
            orbits.push(vec![n]);
            let mut gamma = vec![1; n + 1];
            // an end node is doubled when it carries the long root of its arrow
            if matches!(x.family(), Family::C1 | Family::A2EvenDagger) {
                gamma[0] = 2;
            }
            if matches!(x.family(), Family::C1 | Family::A2Even) {
                gamma[n] = 2;
            }
            (y, orbits, gamma, 2)
        }
        Family::B1 | Family::A2Odd => {
            let y = AffineType::new(Family::D1, n + 1)?;
            let mut orbits: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
            orbits.push(vec![n, n + 1]);
            let mut gamma = vec![1; n + 1];
            if x.family() == Family::B1 {
                for g in gamma.iter_mut().take(n) {
                    *g = 2;
                }
            }
            (y, orbits, gamma, 2)
        }
        Family::F1 | Family::E2 => {
            let y = AffineType::new(Family::E1, 6)?;
            let orbits = vec![vec![0], vec![6], vec![3], vec![2, 4], vec![1, 5]];
            let gamma = if x.family() == Family::F1 {
                vec![2, 2, 2, 1, 1]
            } else {
                vec![1; 5]
            };
            (y, orbits, gamma, 2)
        }
        Family::G1 | Family::D3 => {
            let y = AffineType::new(Family::D1, 4)?;
            let orbits = vec![vec![0], vec![2], vec![1, 3, 4]];
            let gamma = if x.family() == Family::G1 {
                vec![3, 3, 1]
            } else {
                vec![1; 3]
            };
            (y, orbits, gamma, 3)
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "{x} is simply laced and is not folded from another type"
            )))
        }
    };
    let mut grid = gamma.clone();
    if x.family() == Family::A2Even {
        grid[n] = 1;
    }
    Ok(EmbeddingData {
        x,
        y,
        orbits,
        gamma,
        grid,
        sigma_order: order,
    })
}

impl EmbeddingData {
    pub fn x_rank(&self) -> usize {
        self.x.rank()
    }

    pub fn y_rank(&self) -> usize {
        self.y.rank()
    }

    /// The `X` node whose orbit contains the classical `Y` node `b`.
    pub fn owner(&self, b: usize) -> usize {
        (1..=self.x_rank())
            .find(|&a| self.orbits[a].contains(&b))
            .expect("every classical node of Y lies in an orbit")
    }

    /// The largest scaling factor over the classical grid.
    /// For A_2n^(2)dag the riggings at node `n` must have the parity of
    /// their row length. The folding rules alone admit too many.
    pub fn parity_node(&self) -> Option<usize> {
        (self.x.family() == Family::A2EvenDagger).then_some(self.x_rank())
    }

    /// Whether the riggings satisfy the parity rule, if any.
    pub fn parity_ok(&self, rc_hat: &RiggedConfiguration) -> bool {
        let Some(a) = self.parity_node() else {
            return true;
        };
        self.orbits[a].iter().all(|&b| {
            rc_hat.riggings[b - 1]
                .iter()
                .all(|(i, js)| js.iter().all(|j| (i + j) % 2 == 0))
        })
    }

    pub fn max_grid(&self) -> u32 {
        self.grid[1..].iter().copied().max().unwrap_or(1)
    }

    fn lift_multiplicity(&self, a: usize) -> u32 {
        if self.x.family() == Family::A2Even && a == self.x_rank() {
            2
        } else {
            1
        }
    }

    pub fn psi_weight(&self, lambda: &Weight) -> Weight {
        let mut w = Weight::zero(self.y_rank());
        for a in 1..=self.x_rank() {
            for &b in &self.orbits[a] {
                w.0[b - 1] += self.gamma[a] as i64 * lambda.coeff(a);
            }
        }
        w
    }

    /// Inverse of `psi_weight` on its image.
    pub fn unpsi_weight(&self, w: &Weight) -> Option<Weight> {
        let mut out = Weight::zero(self.x_rank());
        for a in 1..=self.x_rank() {
            let c = w.coeff(self.orbits[a][0]);
            if self.orbits[a].iter().any(|&b| w.coeff(b) != c) || c % self.gamma[a] as i64 != 0 {
                return None;
            }
            out.0[a - 1] = c / self.gamma[a] as i64;
        }
        Some(out)
    }

    /// Image of `alpha_i` for any node `i` of `X`, as `Y` root coordinates over all of `I^Y`.
    pub fn psi_root(&self, i: usize) -> Vec<i64> {
        let mut r = vec![0; self.y_rank() + 1];
        for &b in &self.orbits[i] {
            r[b] += self.gamma[i] as i64;
        }
        r
    }

    pub fn lift_spec(&self, l: &TensorSpec) -> TensorSpec {
        let mut out = TensorSpec::new();
        for ((a, i), c) in l.iter() {
            for &b in &self.orbits[a] {
                out.add(b, self.grid[a] * i, self.lift_multiplicity(a) * c);
            }
        }
        out
    }

    fn orbit_symmetric(&self, w: &Weight) -> bool {
        (1..=self.x_rank()).all(|a| {
            let c = w.coeff(self.orbits[a][0]);
            self.orbits[a].iter().all(|&b| w.coeff(b) == c)
        })
    }

    /// Condition (2) of the admission rule: at depths where a row of node `a`
    /// would end off its grid, the parent edge repeats on the orbit of `a`.
    fn edge_condition(&self, cand: &Candidate) -> bool {
        let Some(pe) = cand.parent_edge else {
            return true;
        };
        (1..=self.x_rank()).all(|a| {
            let g = self.grid[a];
            g == 1 || (cand.depth - 1) % g == 0 || self.orbits[a].iter().all(|&b| pe[b - 1] == cand.edge[b - 1])
        })
    }

    fn selectable(&self, depth: u32, edge: Option<&[i64]>) -> bool {
        let gamma = self.max_grid();
        if depth % gamma == 0 {
            return true;
        }
        let Some(e) = edge else {
            return true;
        };
        (1..=self.x_rank())
            .filter(|&a| self.grid[a] == gamma)
            .all(|a| self.orbits[a].iter().all(|&b| e[b - 1] == 0))
    }

    pub fn devirtualize(&self, nu_hat: &Configuration) -> Result<Configuration> {
        let mut rows = Vec::with_capacity(self.x_rank());
        for a in 1..=self.x_rank() {
            let rep = nu_hat.rows(self.orbits[a][0]);
            if self.orbits[a].iter().any(|&b| nu_hat.rows(b) != rep) {
                return Err(Error::NotVirtual(format!("{nu_hat} is not symmetric on the orbit of node {a}")));
            }
            let g = self.grid[a];
            if rep.iter().any(|&r| r % g != 0) {
                return Err(Error::NotVirtual(format!("{nu_hat} has rows off the grid {g} at node {a}")));
            }
            rows.push(rep.iter().map(|&r| r / g).collect());
        }
        Ok(Configuration::from_rows(rows))
    }

    pub fn virtualize_config(&self, nu: &Configuration) -> Configuration {
        let mut rows = vec![Vec::new(); self.y_rank()];
        for a in 1..=self.x_rank() {
            for &b in &self.orbits[a] {
                rows[b - 1] = nu.rows(a).iter().map(|&r| r * self.grid[a]).collect();
            }
        }
        Configuration::from_rows(rows)
    }

    pub fn virtualize(&self, rc: &RiggedConfiguration) -> RiggedConfiguration {
        let nu = self.virtualize_config(&rc.nu);
        let mut riggings = vec![BTreeMap::new(); self.y_rank()];
        for a in 1..=self.x_rank() {
            for &b in &self.orbits[a] {
                riggings[b - 1] = rc.riggings[a - 1]
                    .iter()
                    .map(|(&i, j)| (i * self.grid[a], j.iter().map(|&x| x * self.gamma[a]).collect()))
                    .collect();
            }
        }
        RiggedConfiguration { nu, riggings }
    }

    pub fn devirtualize_rigged(&self, rc_hat: &RiggedConfiguration) -> Result<RiggedConfiguration> {
        let nu = self.devirtualize(&rc_hat.nu)?;
        let mut riggings = Vec::with_capacity(self.x_rank());
        for a in 1..=self.x_rank() {
            let rep = &rc_hat.riggings[self.orbits[a][0] - 1];
            if self.orbits[a].iter().any(|&b| &rc_hat.riggings[b - 1] != rep) {
                return Err(Error::NotVirtual(format!("riggings differ on the orbit of node {a}")));
            }
            let (g, s) = (self.grid[a], self.gamma[a]);
            let mut m = BTreeMap::new();
            for (&i, j) in rep {
                if j.iter().any(|&x| x % s != 0) {
                    return Err(Error::NotVirtual(format!("rigging at node {a} is not a multiple of {s}")));
                }
                m.insert(i / g, j.iter().map(|&x| x / s).collect());
            }
            riggings.push(m);
        }
        Ok(RiggedConfiguration { nu, riggings })
    }
}

pub fn psi_weight(x: AffineType, lambda: &Weight) -> Result<Weight> {
    Ok(embedding(x)?.psi_weight(lambda))
}

pub fn lift_spec(x: AffineType, l: &TensorSpec) -> Result<TensorSpec> {
    Ok(embedding(x)?.lift_spec(l))
}

/// The virtual Kleber tree of `B` over `Y`, with selected and superlattice nodes flagged.
pub fn virtual_kleber_tree(x: AffineType, l: &TensorSpec, target: Option<&Weight>) -> Result<KleberTree> {
    virtual_kleber_tree_with(x, l, target, Exec::default())
}

pub fn virtual_kleber_tree_with(
    x: AffineType,
    l: &TensorSpec,
    target: Option<&Weight>,
    exec: Exec,
) -> Result<KleberTree> {
    let emb = embedding(x)?;
    l.check_rank(x.rank())?;
    let lhat = emb.lift_spec(l);
    let that = target.map(|w| emb.psi_weight(w));
    let dynkin = dynkin_data(emb.y);
    let admit = |c: &Candidate| emb.orbit_symmetric(c.weight) && emb.edge_condition(c);
    let mut nodes = Grower {
        dynkin: &dynkin,
        spec: &lhat,
        target: that.as_ref(),
        admit: &admit,
        exec,
    }
    .grow();
    for node in nodes.iter_mut() {
        node.superlattice = emb.unpsi_weight(&node.weight).is_none();
        let weight_ok = match &that {
            Some(t) => &node.weight == t,
            None => !node.superlattice,
        };
        node.selected = weight_ok && emb.selectable(node.depth, node.edge.as_deref());
    }
    Ok(KleberTree {
        ctype: emb.y,
        spec: lhat,
        target: that,
        nodes,
    })
}

/// Selected nodes as `(weight over Y, configuration over Y)`.
pub fn select_nodes(tree: &KleberTree) -> Vec<(Weight, Configuration)> {
    tree.nodes
        .iter()
        .filter(|x| x.selected)
        .map(|x| path_to_config(tree, x.id))
        .collect()
}

/// The virtual configurations `C^v(B, lambda)` over `Y`, sorted.
pub fn virtual_configs(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<Configuration>> {
    virtual_configs_with(x, l, lambda, Exec::default())
}

pub fn virtual_configs_with(x: AffineType, l: &TensorSpec, lambda: &Weight, exec: Exec) -> Result<Vec<Configuration>> {
    if lambda.rank() != x.rank() || !lambda.is_dominant() {
        return Ok(Vec::new());
    }
    let tree = virtual_kleber_tree_with(x, l, Some(lambda), exec)?;
    let mut out: Vec<Configuration> = select_nodes(&tree).into_iter().map(|(_, c)| c).collect();
    out.sort();
    Ok(out)
}

/// `C(B, lambda)` over `X`, obtained by folding the selected virtual configurations.
pub fn devirtualized_configs(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<Configuration>> {
    let emb = embedding(x)?;
    let mut out = virtual_configs(x, l, lambda)?
        .iter()
        .map(|c| emb.devirtualize(c))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The oracle for `C^v(B, lambda)`: every admissible `Y` configuration of
/// `(lift(B), Psi(lambda))` that is orbit-symmetric and supported on the grid.
pub fn brute_force_virtual_configs(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<Configuration>> {
    let emb = embedding(x)?;
    l.check_rank(x.rank())?;
    if lambda.rank() != x.rank() || !lambda.is_dominant() {
        return Ok(Vec::new());
    }
    let fd = FermionicData::new(emb.y)?;
    let lhat = emb.lift_spec(l);
    let lam = emb.psi_weight(lambda);
    let copy_of: Vec<Option<usize>> = (1..=emb.y_rank())
        .map(|b| {
            let rep = emb.orbits[emb.owner(b)][0];
            (rep != b).then_some(rep)
        })
        .collect();
    let row_ok = |b: usize, rows: &[u32]| {
        let g = emb.grid[emb.owner(b)];
        rows.iter().all(|&r| r % g == 0)
    };
    Ok(brute_force_filtered(&fd, &lhat, &lam, &row_ok, &copy_of))
}

/// A virtual rigged configuration with its folded counterpart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualRigged {
    pub folded: RiggedConfiguration,
    pub virtual_rc: RiggedConfiguration,
    /// `cc(nu^, J^)` computed over `Y`.
    pub virtual_cocharge: Rational,
}

/// All elements of `RC^v(B, lambda)`.
pub fn enumerate_virtual_rigged(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<VirtualRigged>> {
    let emb = embedding(x)?;
    let fy = FermionicData::new(emb.y)?;
    let lhat = emb.lift_spec(l);
    let mut out = Vec::new();
    for nu_hat in virtual_configs(x, l, lambda)? {
        let nu = emb.devirtualize(&nu_hat)?;
        let bound = |a: usize, i: u32| {
            let p = fy.vacancy(&lhat, &nu_hat, emb.orbits[a][0], emb.grid[a] * i);
            (p / emb.gamma[a] as i64) as u32
        };
        for rc in riggings_of(&nu, bound, |_| 1) {
            let vrc = emb.virtualize(&rc);
            if !emb.parity_ok(&vrc) {
                continue;
            }
            let cc = fy.rigged_cocharge(&vrc);
            out.push(VirtualRigged {
                folded: rc,
                virtual_rc: vrc,
                virtual_cocharge: cc,
            });
        }
    }
    Ok(out)
}

/// `M(B, lambda; q)` as `sum q^{cc(nu^, J^) / gamma_0}` over `RC^v(B, lambda)`.
pub fn m_polynomial_via_virtual(x: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<QPolynomial> {
    m_polynomial_via_virtual_with(x, l, lambda, Exec::default())
}

pub fn m_polynomial_via_virtual_with(
    x: AffineType,
    l: &TensorSpec,
    lambda: &Weight,
    exec: Exec,
) -> Result<QPolynomial> {
    let emb = embedding(x)?;
    let fy = FermionicData::new(emb.y)?;
    let lhat = emb.lift_spec(l);
    let configs = virtual_configs_with(x, l, lambda, exec)?;
    let terms = exec.map(&configs, |nu_hat| -> Result<QPolynomial> {
        let nu = emb.devirtualize(nu_hat)?;
        let mut term = QPolynomial::monomial(fy.cocharge(nu_hat), BigInt::one());
        for a in 1..=emb.x_rank() {
            let weight = emb.gamma[a] as u64 * emb.orbits[a].len() as u64;
            for (i, m) in nu.multiplicities(a) {
                let p = fy.vacancy(&lhat, nu_hat, emb.orbits[a][0], emb.grid[a] * i);
                let p = (p / emb.gamma[a] as i64) as u64;
                if emb.parity_node() == Some(a) {
                    // riggings j = odd + 2k with odd = i mod 2
                    let odd = (emb.grid[a] * i % 2) as u64;
                    if p < odd {
                        term = QPolynomial::zero();
                        break;
                    }
                    let shift = QPolynomial::monomial(Rational::from_integer((m as u64 * odd * weight) as i64), 1);
                    term = &(&term * &shift) * &gaussian_binomial(m as u64, (p - odd) / 2, 2 * weight);
                    continue;
                }
                term = &term * &gaussian_binomial(m as u64, p, weight);
            }
        }
        Ok(term.scale_exponents(Rational::new(1, emb.gamma[0] as i64)))
    });
    terms.into_iter().collect::<Result<Vec<_>>>().map(|v| v.into_iter().sum())
}
