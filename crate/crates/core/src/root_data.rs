//! Affine Dynkin data and classical weight arithmetic.
//!
//! Node numbering (node 0 is the affine node, `n` is the classical rank):
//!
//! | family          | shape                                                              |
//! |-----------------|--------------------------------------------------------------------|
//! | A_n^(1)         | cycle 0-1-...-n-0 (n = 1: double bond 0=1, both entries -2)        |
//! | B_n^(1)         | 0-2, 1-2-...-(n-1) => n                                            |
//! | C_n^(1)         | 0 => 1-2-...-(n-1) <= n                                            |
//! | D_n^(1)         | 0-2, 1-2-...-(n-2), (n-2)-(n-1), (n-2)-n                           |
//! | E_6^(1)         | 1-2-3-4-5, 3-6, 6-0                                                |
//! | E_7^(1)         | 0-1-2-3-4-5-6, 3-7                                                 |
//! | E_8^(1)         | 0-1-2-3-4-5-6-7, 5-8                                               |
//! | F_4^(1)         | 0-1-2 => 3-4                                                       |
//! | G_2^(1)         | 0-1 =>(3) 2                                                        |
//! | A_2n^(2)        | 0 <= 1-...-(n-1) <= n   (n = 1: 0 <=(4) 1)                         |
//! | A_2n^(2)dagger  | 0 => 1-...-(n-1) => n   (n = 1: 0 =>(4) 1)                         |
//! | A_2n-1^(2)      | 0-2, 1-2-...-(n-1) <= n                                            |
//! | D_n+1^(2)       | 0 <= 1-...-(n-1) => n                                              |
//! | E_6^(2)         | 0-1-2 <= 3-4                                                       |
//! | D_4^(3)         | 0-1 <=(3) 2                                                        |
//!
//! An arrow `i => j` points from the long root to the short one and gives
//! `A[i][j] = -1`, `A[j][i] = -k` for a bond of multiplicity `k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A1,
    B1,
    C1,
    D1,
    E1,
    F1,
    G1,
    /// A_{2n}^{(2)}
    A2Even,
    /// A_{2n}^{(2)\dagger}
    A2EvenDagger,
    /// A_{2n-1}^{(2)}
    A2Odd,
    /// D_{n+1}^{(2)}
    D2,
    E2,
    D3,
}

impl Family {
    pub fn twist(self) -> i64 {
        match self {
            Family::A1 | Family::B1 | Family::C1 | Family::D1 | Family::E1 | Family::F1 | Family::G1 => 1,
            Family::D3 => 3,
            _ => 2,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Family::A1 | Family::A2Even | Family::A2EvenDagger => 1,
            Family::B1 | Family::A2Odd => 3,
            Family::C1 | Family::D2 => 2,
            Family::D1 => 4,
            Family::E1 => 6,
            Family::F1 | Family::E2 => 4,
            Family::G1 | Family::D3 => 2,
        }
    }
}

/// An affine type together with the rank `n` of its classical part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineType {
    family: Family,
    n: usize,
}

impl AffineType {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let ok = match family {
            Family::E1 => (6..=8).contains(&n),
            Family::F1 | Family::E2 => n == 4,
            Family::G1 | Family::D3 => n == 2,
            _ => n >= family.min_rank(),
        };
        if ok {
            Ok(AffineType { family, n })
        } else {
            Err(Error::InvalidType(format!("{family:?} does not exist in rank {n}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.n
    }

    pub fn twist(self) -> i64 {
        self.family.twist()
    }

    /// Untwisted with a simply-laced classical part (A, D, E).
    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A1 | Family::D1 | Family::E1)
    }

    pub fn is_exceptional(self) -> bool {
        matches!(
            self.family,
            Family::E1 | Family::F1 | Family::G1 | Family::E2 | Family::D3
        )
    }

    /// The short command-line label, e.g. `A3~1`, `A4~2dag`, `D3~2`.
    pub fn label(self) -> String {
        let n = self.n;
        match self.family {
            Family::A1 => format!("A{n}~1"),
            Family::B1 => format!("B{n}~1"),
            Family::C1 => format!("C{n}~1"),
            Family::D1 => format!("D{n}~1"),
            Family::E1 => format!("E{n}~1"),
            Family::F1 => "F4~1".into(),
            Family::G1 => "G2~1".into(),
            Family::A2Even => format!("A{}~2", 2 * n),
            Family::A2EvenDagger => format!("A{}~2dag", 2 * n),
            Family::A2Odd => format!("A{}~2", 2 * n - 1),
            Family::D2 => format!("D{}~2", n + 1),
            Family::E2 => "E6~2".into(),
            Family::D3 => "D4~3".into(),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse type {s:?}; expected e.g. A3~1, A4~2dag, D3~2"));
        let (head, tail) = s.split_once('~').ok_or_else(bad)?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let label: usize = chars.as_str().parse().map_err(|_| bad())?;
        let (twist, dagger) = match tail {
            "1" => (1, false),
            "2" => (2, false),
            "2dag" => (2, true),
            "3" => (3, false),
            _ => return Err(bad()),
        };
        let (family, n) = match (letter, twist, dagger) {
            ('A', 1, false) => (Family::A1, label),
            ('B', 1, false) => (Family::B1, label),
            ('C', 1, false) => (Family::C1, label),
            ('D', 1, false) => (Family::D1, label),
            ('E', 1, false) => (Family::E1, label),
            ('F', 1, false) if label == 4 => (Family::F1, 4),
            ('G', 1, false) if label == 2 => (Family::G1, 2),
            ('A', 2, false) if label % 2 == 0 => (Family::A2Even, label / 2),
            ('A', 2, true) if label % 2 == 0 => (Family::A2EvenDagger, label / 2),
            ('A', 2, false) => (Family::A2Odd, (label + 1) / 2),
            ('D', 2, false) if label >= 1 => (Family::D2, label - 1),
            ('E', 2, false) if label == 6 => (Family::E2, 4),
            ('D', 3, false) if label == 4 => (Family::D3, 2),
            _ => return Err(bad()),
        };
        AffineType::new(family, n)
    }
}

/// Cartan matrix, Kac labels and t-factors of an affine type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinData {
    pub ctype: AffineType,
    pub cartan: Vec<Vec<i64>>,
    pub a: Vec<i64>,
    pub a_dual: Vec<i64>,
    pub t: Vec<i64>,
    pub t_dual: Vec<i64>,
    /// Arrows `(long, short, multiplicity)`.
    pub arrows: Vec<(usize, usize, i64)>,
    #[serde(skip)]
    classical_inverse: Vec<Vec<Rational>>,
}

fn chain(edges: &mut Vec<(usize, usize)>, from: usize, to: usize) {
    for i in from..to {
        edges.push((i, i + 1));
    }
}

fn diagram(ct: AffineType) -> (Vec<(usize, usize)>, Vec<(usize, usize, i64)>) {
    let n = ct.n;
    let mut e = Vec::new();
    let mut arr = Vec::new();
    match ct.family {
        Family::A1 => {
            if n >= 2 {
                chain(&mut e, 0, n);
                e.push((n, 0));
            }
        }
        Family::B1 => {
            e.push((0, 2));
            chain(&mut e, 1, n - 1);
            arr.push((n - 1, n, 2));
        }
        Family::C1 => {
            arr.push((0, 1, 2));
            chain(&mut e, 1, n - 1);
            arr.push((n, n - 1, 2));
        }
        Family::D1 => {
            e.push((0, 2));
            chain(&mut e, 1, n - 1);
            e.push((n - 2, n));
        }
        Family::E1 => match n {
            6 => {
                chain(&mut e, 1, 5);
                e.push((3, 6));
                e.push((6, 0));
            }
            7 => {
                chain(&mut e, 0, 6);
                e.push((3, 7));
            }
            _ => {
                chain(&mut e, 0, 7);
                e.push((5, 8));
            }
        },
        Family::F1 => {
            chain(&mut e, 0, 2);
            arr.push((2, 3, 2));
            e.push((3, 4));
        }
        Family::G1 => {
            e.push((0, 1));
            arr.push((1, 2, 3));
        }
        Family::A2Even => {
            if n == 1 {
                arr.push((1, 0, 4));
            } else {
                arr.push((1, 0, 2));
                chain(&mut e, 1, n - 1);
                arr.push((n, n - 1, 2));
            }
        }
        Family::A2EvenDagger => {
            if n == 1 {
                arr.push((0, 1, 4));
            } else {
                arr.push((0, 1, 2));
                chain(&mut e, 1, n - 1);
                arr.push((n - 1, n, 2));
            }
        }
        Family::A2Odd => {
            e.push((0, 2));
            chain(&mut e, 1, n - 1);
            arr.push((n, n - 1, 2));
        }
        Family::D2 => {
            arr.push((1, 0, 2));
            chain(&mut e, 1, n - 1);
            arr.push((n - 1, n, 2));
        }
        Family::E2 => {
            chain(&mut e, 0, 2);
            arr.push((3, 2, 2));
            e.push((3, 4));
        }
        Family::D3 => {
            e.push((0, 1));
            arr.push((2, 1, 3));
        }
    }
    (e, arr)
}

/// Positive primitive integer vector spanning the kernel of a corank-one matrix.
fn kernel_vector(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..cols {
                    let v = a[row][c] * f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).expect("matrix has full rank");
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free];
    }
    let lcm = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<i64> = v.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = out.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let sign = if out.iter().any(|&x| x < 0) { -1 } else { 1 };
    for x in out.iter_mut() {
        *x = sign * *x / g;
    }
    out
}

pub(crate) fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().map(|&x| Rational::from_integer(x)).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("classical Cartan matrix is invertible");
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c] * f;
                    a[r][c] -= v;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn integral(x: Rational) -> i64 {
    assert!(x.is_integer(), "expected an integer, got {x}");
    x.to_integer()
}

pub fn dynkin_data(ct: AffineType) -> DynkinData {
    let n = ct.n;
    let mut cartan = vec![vec![0i64; n + 1]; n + 1];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    let (edges, arrows) = diagram(ct);
    if ct.family == Family::A1 && n == 1 {
        cartan[0][1] = -2;
        cartan[1][0] = -2;
    }
    for &(i, j) in &edges {
        cartan[i][j] = -1;
        cartan[j][i] = -1;
    }
    for &(long, short, k) in &arrows {
        cartan[long][short] = -1;
        cartan[short][long] = -k;
    }
    let a = kernel_vector(&cartan);
    let transposed: Vec<Vec<i64>> = (0..=n).map(|j| (0..=n).map(|i| cartan[i][j]).collect()).collect();
    let a_dual = kernel_vector(&transposed);
    let t = (0..=n)
        .map(|i| integral(Rational::new(a[i], a_dual[i]).max(Rational::from_integer(a_dual[0]))))
        .collect();
    let t_dual = (0..=n)
        .map(|i| integral(Rational::new(a_dual[i], a[i]).max(Rational::from_integer(a[0]))))
        .collect();
    let classical: Vec<Vec<i64>> = (1..=n).map(|i| cartan[i][1..].to_vec()).collect();
    DynkinData {
        ctype: ct,
        classical_inverse: invert(&classical),
        cartan,
        a,
        a_dual,
        t,
        t_dual,
        arrows,
    }
}

impl DynkinData {
    pub fn rank(&self) -> usize {
        self.ctype.n
    }

    /// Entry `<h_a, alpha_b>` of the classical Cartan matrix, nodes `1..=n`.
    pub fn classical(&self, a: usize, b: usize) -> i64 {
        self.cartan[a][b]
    }

    /// `(alpha_i | alpha_j) = (a_i^dual / a_i) A_ij` over all of `I`.
    pub fn form_entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.a_dual[i], self.a[i]) * self.cartan[i][j]
    }

    pub fn inv_form(&self, x: &RootVector, y: &RootVector) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for a in 0..n {
            if x.0[a].is_zero() {
                continue;
            }
            for b in 0..n {
                acc += x.0[a] * y.0[b] * self.form_entry(a + 1, b + 1);
            }
        }
        acc
    }

    /// Squared length of the long roots, `2r / a_0^dual`.
    pub fn long_root_length(&self) -> Rational {
        Rational::new(2 * self.ctype.twist(), self.a_dual[0])
    }

    pub fn to_root_coords(&self, w: &Weight) -> RootVector {
        let n = self.rank();
        RootVector(
            (0..n)
                .map(|a| (0..n).fold(Rational::zero(), |acc, b| acc + self.classical_inverse[a][b] * w.0[b]))
                .collect(),
        )
    }

    /// Integer root coordinates, or `None` if `w` is not in the root lattice.
    pub fn integral_root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.to_root_coords(w).to_integers()
    }

    /// `sum_b r_b alpha_b` in fundamental coordinates.
    pub fn from_root_coords(&self, r: &[i64]) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|a| (0..n).map(|b| self.cartan[a + 1][b + 1] * r[b]).sum())
                .collect(),
        )
    }

    pub fn simple_root(&self, a: usize) -> Weight {
        Weight((1..=self.rank()).map(|b| self.cartan[b][a]).collect())
    }

    pub fn dominates(&self, mu: &Weight, nu: &Weight) -> bool {
        self.integral_root_coords(&(mu - nu))
            .is_some_and(|r| r.iter().all(|&x| x >= 0))
    }

    /// All dominant weights `nu` with `top` dominating `nu`, sorted.
    pub fn dominant_weights_below(&self, top: &Weight) -> Vec<Weight> {
        let Some(box_) = self.integral_root_coords(top) else {
            // top is not in the root lattice: walk the coset instead
            let r = self.to_root_coords(top);
            let floor: Vec<i64> = r.0.iter().map(|x| x.floor().to_integer()).collect();
            return self.dominant_in_box(top, &floor);
        };
        self.dominant_in_box(top, &box_)
    }

    fn dominant_in_box(&self, top: &Weight, bound: &[i64]) -> Vec<Weight> {
        let n = self.rank();
        let mut out = Vec::new();
        if bound.iter().any(|&b| b < 0) {
            return if top.is_dominant() { vec![top.clone()] } else { out };
        }
        let mut d = vec![0i64; n];
        loop {
            let w = top - &self.from_root_coords(&d);
            if w.is_dominant() {
                out.push(w);
            }
            let mut k = 0;
            while k < n {
                if d[k] < bound[k] {
                    d[k] += 1;
                    break;
                }
                d[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        out.sort();
        out
    }
}

/// A classical weight in fundamental coordinates, node `a` at index `a - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn fundamental(n: usize, a: usize) -> Self {
        let mut w = vec![0; n];
        w[a - 1] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeff(&self, a: usize) -> i64 {
        self.0[a - 1]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "L{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(x, y)| x - y).collect())
    }
}

impl Mul<i64> for &Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self * -1
    }
}

/// Rational coefficients with respect to the classical simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootVector(pub Vec<Rational>);

impl RootVector {
    pub fn from_integers(v: &[i64]) -> Self {
        RootVector(v.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Membership in the positive root cone with integer coefficients.
    pub fn is_positive_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer() && !x.is_negative())
    }
}
