//! Kleber's tree algorithm for simply-laced untwisted types.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::config::{Configuration, TensorSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fermionic::FermionicData;
use crate::root_data::{dynkin_data, AffineType, DynkinData, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KleberNode {
    pub id: usize,
    pub weight: Weight,
    pub depth: u32,
    pub parent: Option<usize>,
    /// Root coordinates of `wt(parent) - wt(self)`.
    pub edge: Option<Vec<i64>>,
    pub children: Vec<usize>,
    /// Set by the virtual algorithm on nodes that realise a configuration of the folded type.
    pub selected: bool,
    /// Set by the virtual algorithm on nodes whose weight is outside the embedded lattice.
    pub superlattice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KleberTree {
    pub ctype: AffineType,
    pub spec: TensorSpec,
    pub target: Option<Weight>,
    pub nodes: Vec<KleberNode>,
}

/// What the admission hook sees about a candidate child.
pub struct Candidate<'a> {
    pub depth: u32,
    pub parent_edge: Option<&'a [i64]>,
    pub edge: &'a [i64],
    pub weight: &'a Weight,
}

impl KleberTree {
    pub fn root(&self) -> &KleberNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Ids of the nodes on the path from the root to `id`, root first.
    pub fn path(&self, id: usize) -> Vec<usize> {
        let mut p = vec![id];
        let mut cur = id;
        while let Some(par) = self.nodes[cur].parent {
            p.push(par);
            cur = par;
        }
        p.reverse();
        p
    }

    /// The subtree spanned by the root and the paths to selected nodes, ids renumbered in order.
    pub fn trimmed(&self) -> KleberTree {
        let mut keep = vec![false; self.nodes.len()];
        keep[0] = true;
        for node in self.nodes.iter().filter(|x| x.selected) {
            for id in self.path(node.id) {
                keep[id] = true;
            }
        }
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        let mut nodes: Vec<KleberNode> = Vec::new();
        for node in self.nodes.iter().filter(|x| keep[x.id]) {
            new_id[node.id] = nodes.len();
            let mut n = node.clone();
            n.id = nodes.len();
            nodes.push(n);
        }
        for n in nodes.iter_mut() {
            n.parent = n.parent.map(|p| new_id[p]);
            n.children = n.children.iter().filter(|&&c| keep[c]).map(|&c| new_id[c]).collect();
        }
        KleberTree {
            ctype: self.ctype,
            spec: self.spec.clone(),
            target: self.target.clone(),
            nodes,
        }
    }

    pub fn nodes_of_weight<'a>(&'a self, w: &'a Weight) -> impl Iterator<Item = &'a KleberNode> + 'a {
        self.nodes.iter().filter(move |x| &x.weight == w)
    }
}

fn require_simply_laced(ct: AffineType) -> Result<()> {
    if ct.is_simply_laced() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "the Kleber algorithm needs a simply-laced type, got {ct}; use the virtual algorithm"
        )))
    }
}

/// Nonzero integer vectors `0 <= d <= bound`, in lexicographic order.
fn box_vectors(bound: &[i64]) -> Vec<Vec<i64>> {
    let n = bound.len();
    let mut out = Vec::new();
    if n == 0 || bound.iter().any(|&b| b < 0) {
        return out;
    }
    let mut d = vec![0i64; n];
    loop {
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if d[k] < bound[k] {
                d[k] += 1;
                break;
            }
            d[k] = 0;
        }
        out.push(d.clone());
    }
}

pub(crate) struct Grower<'a> {
    pub dynkin: &'a DynkinData,
    pub spec: &'a TensorSpec,
    pub target: Option<&'a Weight>,
    pub admit: &'a (dyn Fn(&Candidate) -> bool + Sync),
    pub exec: Exec,
}

struct Pending {
    weight: Weight,
    depth: u32,
    parent: Option<usize>,
    edge: Option<Vec<i64>>,
}

impl Grower<'_> {
    /// Weight still to be added to a node created at `depth`.
    fn future(&self, depth: u32) -> Weight {
        let n = self.dynkin.rank();
        let mut w = Weight::zero(n);
        for l in depth + 1..=self.spec.max_width() {
            w = &w + &self.spec.tail_weight(n, l);
        }
        w
    }

    fn keep(&self, tau: &Weight, depth: u32, edge: &[i64]) -> bool {
        let Some(lambda) = self.target else {
            return true;
        };
        let fin = tau + &self.future(depth);
        let Some(diff) = self.dynkin.integral_root_coords(&(&fin - lambda)) else {
            return false;
        };
        if diff.iter().any(|&x| x < 0) {
            return false;
        }
        !diff.iter().zip(edge).any(|(&x, &d)| x > 0 && d == 0)
    }

    fn children(&self, mu: &Weight, depth: u32, parent_edge: Option<&[i64]>) -> Vec<(Vec<i64>, Weight)> {
        let bound: Vec<i64> = match parent_edge {
            Some(e) => e.to_vec(),
            None => self
                .dynkin
                .to_root_coords(mu)
                .0
                .iter()
                .map(|x| x.floor().to_integer())
                .collect(),
        };
        let mut out = Vec::new();
        for d in box_vectors(&bound) {
            let tau = mu - &self.dynkin.from_root_coords(&d);
            if !tau.is_dominant() {
                continue;
            }
            let cand = Candidate {
                depth,
                parent_edge,
                edge: &d,
                weight: &tau,
            };
            if !(self.admit)(&cand) || !self.keep(&tau, depth, &d) {
                continue;
            }
            out.push((d, tau));
        }
        out
    }

    pub fn grow(&self) -> Vec<KleberNode> {
        let n = self.dynkin.rank();
        let mut nodes = vec![Pending {
            weight: Weight::zero(n),
            depth: 0,
            parent: None,
            edge: None,
        }];
        let mut ell = 0u32;
        loop {
            ell += 1;
            let add = self.spec.tail_weight(n, ell);
            for x in nodes.iter_mut() {
                x.weight = &x.weight + &add;
            }
            let frontier: Vec<(usize, Weight, Option<Vec<i64>>)> = nodes
                .iter()
                .enumerate()
                .filter(|(_, x)| x.depth == ell - 1)
                .map(|(id, x)| (id, x.weight.clone(), x.edge.clone()))
                .collect();
            let kids = self
                .exec
                .map(&frontier, |(_, mu, pe)| self.children(mu, ell, pe.as_deref()));
            let mut grew = false;
            for ((id, _, _), list) in frontier.iter().zip(kids) {
                for (d, tau) in list {
                    grew = true;
                    nodes.push(Pending {
                        weight: tau,
                        depth: ell,
                        parent: Some(*id),
                        edge: Some(d),
                    });
                }
            }
            if !grew && add.is_zero() {
                break;
            }
        }
        let mut out: Vec<KleberNode> = nodes
            .into_iter()
            .enumerate()
            .map(|(id, p)| KleberNode {
                id,
                weight: p.weight,
                depth: p.depth,
                parent: p.parent,
                edge: p.edge,
                children: Vec::new(),
                selected: false,
                superlattice: false,
            })
            .collect();
        for id in 1..out.len() {
            let par = out[id].parent.expect("non-root node has a parent");
            out[par].children.push(id);
        }
        out
    }
}

pub fn kleber_tree(ct: AffineType, l: &TensorSpec, target: Option<&Weight>) -> Result<KleberTree> {
    kleber_tree_with(ct, l, target, Exec::default())
}

pub fn kleber_tree_with(ct: AffineType, l: &TensorSpec, target: Option<&Weight>, exec: Exec) -> Result<KleberTree> {
    require_simply_laced(ct)?;
    l.check_rank(ct.rank())?;
    let dynkin = dynkin_data(ct);
    let nodes = Grower {
        dynkin: &dynkin,
        spec: l,
        target,
        admit: &|_| true,
        exec,
    }
    .grow();
    Ok(KleberTree {
        ctype: ct,
        spec: l.clone(),
        target: target.cloned(),
        nodes,
    })
}

/// The weight and configuration attached to a node.
///
/// With edges `d_1, ..., d_p` along the path, `m_i^(a)` is the `a`-th root
/// coordinate of `d_i - d_{i+1}` (taking `d_{p+1} = 0`).
pub fn path_to_config(tree: &KleberTree, id: usize) -> (Weight, Configuration) {
    let n = tree.ctype.rank();
    let edges: Vec<&Vec<i64>> = tree
        .path(id)
        .iter()
        .skip(1)
        .map(|&x| tree.nodes[x].edge.as_ref().expect("non-root node has an edge"))
        .collect();
    let mut rows = vec![Vec::new(); n];
    let zero = vec![0i64; n];
    for (k, d) in edges.iter().enumerate() {
        let next = edges.get(k + 1).map(|v| v.as_slice()).unwrap_or(&zero);
        for a in 0..n {
            let m = d[a] - next[a];
            assert!(m >= 0, "edge labels must decrease along a path");
            rows[a].extend(std::iter::repeat((k + 1) as u32).take(m as usize));
        }
    }
    (tree.nodes[id].weight.clone(), Configuration::from_rows(rows))
}

/// How to read the vacancy formula attached to a tree path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathVacancy {
    /// `-sum_{j>i} L_j^(a) + (lambda^(i) | alpha_a)`
    UnweightedTail,
    /// `-sum_{j>i} (j - i) L_j^(a) + (lambda^(i) | alpha_a)`
    WeightedTail,
}

/// Vacancy number read off the path weights `lambda^(i)` of a node.
pub fn path_vacancy(tree: &KleberTree, id: usize, a: usize, i: u32, reading: PathVacancy) -> i64 {
    let path = tree.path(id);
    let w = &tree.nodes[*path.get(i as usize).unwrap_or(&id)].weight;
    let tail: i64 = tree
        .spec
        .iter()
        .filter(|&((b, j), _)| b == a && j > i)
        .map(|((_, j), c)| match reading {
            PathVacancy::UnweightedTail => c as i64,
            PathVacancy::WeightedTail => ((j - i) * c) as i64,
        })
        .sum();
    w.coeff(a) - tail
}

/// `C(B, lambda)` through the pruned tree.
pub fn configs(ct: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<Configuration>> {
    configs_with(ct, l, lambda, Exec::default())
}

pub fn configs_with(ct: AffineType, l: &TensorSpec, lambda: &Weight, exec: Exec) -> Result<Vec<Configuration>> {
    require_simply_laced(ct)?;
    if lambda.rank() != ct.rank() || !lambda.is_dominant() {
        return Ok(Vec::new());
    }
    let tree = kleber_tree_with(ct, l, Some(lambda), exec)?;
    let mut out: Vec<Configuration> = tree
        .nodes_of_weight(lambda)
        .map(|x| path_to_config(&tree, x.id).1)
        .collect();
    out.sort();
    Ok(out)
}

/// All partitions of `n`, parts weakly decreasing, largest part first.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=cap.min(rest)).rev() {
            cur.push(x);
            rec(rest - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive search over tuples of partitions, with per-node row filters and
/// nodes forced to copy another node's partition.
pub(crate) fn brute_force_filtered(
    fd: &FermionicData,
    l: &TensorSpec,
    lambda: &Weight,
    row_ok: &dyn Fn(usize, &[u32]) -> bool,
    copy_of: &[Option<usize>],
) -> Vec<Configuration> {
    let n = fd.rank();
    if lambda.rank() != n || !lambda.is_dominant() {
        return Vec::new();
    }
    let Some(rhs) = fd.rhs_root_coords(l, lambda) else {
        return Vec::new();
    };
    for a in 1..=n {
        if let Some(src) = copy_of[a - 1] {
            if rhs[src - 1] != rhs[a - 1] {
                return Vec::new();
            }
        }
    }
    let reps: Vec<usize> = (1..=n).filter(|&a| copy_of[a - 1].is_none()).collect();
    let options: Vec<Vec<Vec<u32>>> = reps
        .iter()
        .map(|&a| partitions(rhs[a - 1] as u32).into_iter().filter(|p| row_ok(a, p)).collect())
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    let mut idx = vec![0usize; reps.len()];
    loop {
        let mut rows = vec![Vec::new(); n];
        for (k, &a) in reps.iter().enumerate() {
            rows[a - 1] = options[k][idx[k]].clone();
        }
        for a in 1..=n {
            if let Some(src) = copy_of[a - 1] {
                rows[a - 1] = rows[src - 1].clone();
            }
        }
        let nu = Configuration::from_rows(rows);
        if fd.is_admissible(l, &nu) {
            found.insert(nu);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    found.into_iter().collect()
}

/// `C(B, lambda)` by testing every solution of the configuration equation.
pub fn brute_force_configs(ct: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<Configuration>> {
    l.check_rank(ct.rank())?;
    let fd = FermionicData::new(ct)?;
    Ok(brute_force_filtered(&fd, l, lambda, &|_, _| true, &vec![None; ct.rank()]))
}
