//! Vacancy numbers, cocharge, the fermionic polynomial and rigged configurations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::config::{Configuration, RiggedConfiguration, TensorSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::qpoly::{gaussian_binomial, QPolynomial};
use crate::root_data::{dynkin_data, invert, AffineType, Family, Rational, Weight};
use crate::{kleber, virtual_kleber};

/// The data entering the vacancy and cocharge formulas of a type.
#[derive(Clone, Debug)]
pub struct FermionicData {
    pub ctype: AffineType,
    /// `(alpha~_a | alpha~_b)` for classical nodes, index `a - 1`.
    pub form: Vec<Vec<Rational>>,
    pub t: Vec<i64>,
    pub t_dual: Vec<i64>,
    /// Inverse of the Cartan matrix used to read off root coordinates of
    /// the right-hand side of the configuration equation.
    rhs_inverse: Vec<Vec<Rational>>,
    /// Factor applied to the `Lambda_n` coefficient before solving (2 for A_2n^(2)).
    rhs_last_scale: i64,
}

impl FermionicData {
    pub fn new(ct: AffineType) -> Result<Self> {
        if ct.family() == Family::A2EvenDagger {
            return Err(Error::Unsupported(format!(
                "no direct vacancy formula for {ct}; use the virtual route"
            )));
        }
        let d = dynkin_data(ct);
        let n = ct.rank();
        let t = d.t[1..].to_vec();
        let t_dual = d.t_dual[1..].to_vec();
        if ct.family() == Family::A2Even {
            // type B_n roots with long roots of squared length 4
            let mut cartan_b = vec![vec![0i64; n]; n];
            let mut form = vec![vec![Rational::zero(); n]; n];
            for a in 0..n {
                cartan_b[a][a] = 2;
                form[a][a] = Rational::from_integer(if a + 1 < n { 4 } else { 2 });
                if a + 1 < n {
                    form[a][a + 1] = Rational::from_integer(-2);
                    form[a + 1][a] = Rational::from_integer(-2);
                    cartan_b[a][a + 1] = -1;
                    cartan_b[a + 1][a] = -1;
                }
            }
            if n >= 2 {
                cartan_b[n - 1][n - 2] = -2;
            }
            return Ok(FermionicData {
                ctype: ct,
                form,
                t,
                t_dual,
                rhs_inverse: invert(&cartan_b),
                rhs_last_scale: 2,
            });
        }
        let form = (1..=n).map(|a| (1..=n).map(|b| d.form_entry(a, b)).collect()).collect();
        let classical: Vec<Vec<i64>> = (1..=n).map(|i| d.cartan[i][1..].to_vec()).collect();
        Ok(FermionicData {
            ctype: ct,
            form,
            t,
            t_dual,
            rhs_inverse: invert(&classical),
            rhs_last_scale: 1,
        })
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    /// Root coordinates (in the `alpha~` basis) of the right-hand side of the
    /// configuration equation, or `None` when they are not nonnegative integers.
    pub fn rhs_root_coords(&self, l: &TensorSpec, lambda: &Weight) -> Option<Vec<i64>> {
        let n = self.rank();
        let mut w = &l.top_weight(n) - lambda;
        w.0[n - 1] *= self.rhs_last_scale;
        let mut out = Vec::with_capacity(n);
        for a in 0..n {
            let x = (0..n).fold(Rational::zero(), |acc, b| acc + self.rhs_inverse[a][b] * w.0[b]);
            if !x.is_integer() || x < Rational::zero() {
                return None;
            }
            out.push(x.to_integer());
        }
        Some(out)
    }

    /// Exact value of `p_i^(a)`.
    pub fn vacancy_exact(&self, l: &TensorSpec, nu: &Configuration, a: usize, i: u32) -> Rational {
        let mut acc = Rational::zero();
        for ((b, k), c) in l.iter() {
            if b == a {
                acc += Rational::from_integer((c * i.min(k)) as i64);
            }
        }
        let ta = self.t[a - 1];
        let mut inner = Rational::zero();
        for b in 1..=self.rank() {
            let f = self.form[a - 1][b - 1];
            if f.is_zero() {
                continue;
            }
            let tb = self.t[b - 1];
            let s: i64 = nu.rows(b).iter().map(|&k| (tb * i as i64).min(ta * k as i64)).sum();
            inner += f * s;
        }
        acc - inner / self.t_dual[a - 1]
    }

    pub fn vacancy(&self, l: &TensorSpec, nu: &Configuration, a: usize, i: u32) -> i64 {
        let p = self.vacancy_exact(l, nu, a, i);
        assert!(p.is_integer(), "non-integral vacancy number {p} at ({a},{i})");
        p.to_integer()
    }

    /// Every `i` past this bound gives the same vacancy number.
    fn stable_bound(&self, l: &TensorSpec, nu: &Configuration) -> u32 {
        let tmax = *self.t.iter().max().unwrap_or(&1) as u32;
        l.max_width().max(nu.max_part() * tmax) + 1
    }

    pub fn is_admissible(&self, l: &TensorSpec, nu: &Configuration) -> bool {
        let bound = self.stable_bound(l, nu);
        for a in 1..=self.rank() {
            for i in 1..=bound {
                if self.vacancy_exact(l, nu, a, i) < Rational::zero() {
                    return false;
                }
            }
            debug_assert_eq!(
                self.vacancy_exact(l, nu, a, bound),
                self.vacancy_exact(l, nu, a, bound + 1)
            );
        }
        true
    }

    pub fn cocharge(&self, nu: &Configuration) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for a in 1..=n {
            for b in 1..=n {
                let f = self.form[a - 1][b - 1];
                if f.is_zero() {
                    continue;
                }
                let (ta, tb) = (self.t[a - 1], self.t[b - 1]);
                let mut s = 0i64;
                for &j in nu.rows(a) {
                    for &k in nu.rows(b) {
                        s += (tb * j as i64).min(ta * k as i64);
                    }
                }
                acc += f * s;
            }
        }
        acc / 2
    }

    /// Cocharge of a rigged configuration, `cc(nu) + sum t_a^dual |J^(a)|`.
    pub fn rigged_cocharge(&self, rc: &RiggedConfiguration) -> Rational {
        let mut cc = self.cocharge(&rc.nu);
        for a in 1..=self.rank() {
            cc += Rational::from_integer(self.t_dual[a - 1] * rc.rigging_size(a) as i64);
        }
        cc
    }

    /// `q^{cc(nu)} prod [p + m choose m]_{q^{t_a^dual}}`.
    pub fn config_term(&self, l: &TensorSpec, nu: &Configuration) -> QPolynomial {
        let mut term = QPolynomial::monomial(self.cocharge(nu), BigInt::one());
        for a in 1..=self.rank() {
            for (i, m) in nu.multiplicities(a) {
                let p = self.vacancy(l, nu, a, i);
                assert!(p >= 0, "inadmissible configuration {nu}");
                term = &term * &gaussian_binomial(m as u64, p as u64, self.t_dual[a - 1] as u64);
            }
        }
        term
    }

    pub fn satisfies_config_equation(&self, l: &TensorSpec, lambda: &Weight, nu: &Configuration) -> bool {
        match self.rhs_root_coords(l, lambda) {
            Some(r) => (1..=self.rank()).all(|a| nu.size(a) as i64 == r[a - 1]),
            None => false,
        }
    }
}

pub fn vacancy(ct: AffineType, l: &TensorSpec, nu: &Configuration, a: usize, i: u32) -> Result<i64> {
    Ok(FermionicData::new(ct)?.vacancy(l, nu, a, i))
}

pub fn is_admissible(ct: AffineType, l: &TensorSpec, nu: &Configuration) -> Result<bool> {
    Ok(FermionicData::new(ct)?.is_admissible(l, nu))
}

pub fn cocharge(ct: AffineType, nu: &Configuration) -> Result<Rational> {
    Ok(FermionicData::new(ct)?.cocharge(nu))
}

/// The admissible configurations `C(B, lambda)` through the appropriate tree algorithm.
pub fn admissible_configs(ct: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<Vec<Configuration>> {
    if ct.is_simply_laced() {
        kleber::configs(ct, l, lambda)
    } else {
        virtual_kleber::devirtualized_configs(ct, l, lambda)
    }
}

/// The fermionic polynomial `M(B, lambda; q)`.
pub fn m_polynomial(ct: AffineType, l: &TensorSpec, lambda: &Weight) -> Result<QPolynomial> {
    m_polynomial_with(ct, l, lambda, Exec::default())
}

pub fn m_polynomial_with(ct: AffineType, l: &TensorSpec, lambda: &Weight, exec: Exec) -> Result<QPolynomial> {
    if ct.family() == Family::A2EvenDagger {
        return virtual_kleber::m_polynomial_via_virtual(ct, l, lambda);
    }
    let fd = FermionicData::new(ct)?;
    let configs = admissible_configs(ct, l, lambda)?;
    Ok(exec.map(&configs, |nu| fd.config_term(l, nu)).into_iter().sum())
}

/// All weakly decreasing sequences of length `m` with entries in `0..=p`.
pub fn box_partitions(m: u32, p: u32) -> Vec<Vec<u32>> {
    fn rec(m: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == m {
            out.push(cur.clone());
            return;
        }
        for x in (0..=cap).rev() {
            cur.push(x);
            rec(m, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, p, &mut Vec::new(), &mut out);
    out
}

/// All riggings of `nu` with every label on row length `i` of node `a`
/// bounded by `bound(a, i)` and scaled by `scale(a)`.
pub(crate) fn riggings_of(
    nu: &Configuration,
    bound: impl Fn(usize, u32) -> u32,
    scale: impl Fn(usize) -> u32,
) -> Vec<RiggedConfiguration> {
    let mut slots: Vec<(usize, u32, Vec<Vec<u32>>)> = Vec::new();
    for a in 1..=nu.rank() {
        for (i, m) in nu.multiplicities(a) {
            let s = scale(a);
            let opts = box_partitions(m, bound(a, i))
                .into_iter()
                .map(|v| v.into_iter().map(|x| x * s).collect())
                .collect();
            slots.push((a, i, opts));
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut riggings: Vec<BTreeMap<u32, Vec<u32>>> = vec![BTreeMap::new(); nu.rank()];
        for (k, (a, i, opts)) in slots.iter().enumerate() {
            riggings[a - 1].insert(*i, opts[idx[k]].clone());
        }
        out.push(RiggedConfiguration { nu: nu.clone(), riggings });
        let mut k = 0;
        while k < slots.len() {
            idx[k] += 1;
            if idx[k] < slots[k].2.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == slots.len() {
            break;
        }
    }
    out
}

/// All rigged configurations in `RC(B, lambda)` with their cocharges.
pub fn enumerate_rigged(
    ct: AffineType,
    l: &TensorSpec,
    lambda: &Weight,
) -> Result<Vec<(RiggedConfiguration, Rational)>> {
    let fd = FermionicData::new(ct)?;
    let mut out = Vec::new();
    for nu in admissible_configs(ct, l, lambda)? {
        for rc in riggings_of(&nu, |a, i| fd.vacancy(l, &nu, a, i) as u32, |_| 1) {
            let cc = fd.rigged_cocharge(&rc);
            out.push((rc, cc));
        }
    }
    Ok(out)
}

/// `sum q^{cc}` over a list of rigged configurations.
pub fn generating_function(items: &[(RiggedConfiguration, Rational)]) -> QPolynomial {
    let mut p = QPolynomial::zero();
    for (_, cc) in items {
        p.add_term(*cc, BigInt::one());
    }
    p
}
