//! Sparse Laurent polynomials in `q` with rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::root_data::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    terms: BTreeMap<Rational, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::zero(), 1)
    }

    pub fn monomial(exp: Rational, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_coeffs(coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Rational::from_integer(k as i64), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, exp: Rational, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: Rational) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exponent(&self) -> Option<Rational> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<Rational> {
        self.terms.keys().next_back().copied()
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute `q -> q^k`.
    pub fn scale_exponents(&self, k: Rational) -> Self {
        QPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e * k, c.clone())).collect(),
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: Rational) -> Self {
        QPolynomial {
            terms: self.terms.iter().map(|(x, c)| (*x + e, c.clone())).collect(),
        }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn invert(&self) -> Self {
        self.scale_exponents(-Rational::one())
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    /// If `self = q^k * other` for a constant `k`, return `k`.
    pub fn offset_from(&self, other: &QPolynomial) -> Option<Rational> {
        let (a, b) = (self.min_exponent()?, other.min_exponent()?);
        let k = a - b;
        (other.shift(k) == *self).then_some(k)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let show_coeff = !mag.is_one() || e.is_zero();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if !e.is_zero() {
                f.write_str("q")?;
                if *e != Rational::one() {
                    if e.is_integer() {
                        write!(f, "^{}", e.numer())?;
                    } else {
                        write!(f, "^({}/{})", e.numer(), e.denom())?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, o: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, o: &QPolynomial) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, o: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(*e1 + *e2, c1 * c2);
            }
        }
        out
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        let mut acc = QPolynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Serialized as a sorted list of `["num/den", coefficient]` pairs.
impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let exp = format!("{}/{}", e.numer(), e.denom());
            match c.to_i64() {
                Some(v) => seq.serialize_element(&(exp, v))?,
                None => seq.serialize_element(&(exp, c.to_string()))?,
            }
        }
        seq.end()
    }
}

/// Coefficients of the Gaussian binomial `[m+p choose m]` in `q`.
fn gaussian_coeffs(m: u64, p: u64) -> Vec<BigInt> {
    // q-Pascal: [N, k] = [N-1, k-1] + q^k [N-1, k], iterated along k.
    let total = m + p;
    let k = m.min(p) as usize;
    // row[j] holds [N choose j] for the current N
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for big_n in 1..=total {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(k + 1);
        for j in 0..=k.min(big_n as usize) {
            let mut c: Vec<BigInt> = vec![BigInt::zero(); j * (big_n as usize - j) + 1];
            if j >= 1 {
                for (d, v) in row[j - 1].iter().enumerate() {
                    c[d] += v;
                }
            }
            if j < row.len() && j <= big_n as usize - 1 {
                for (d, v) in row[j].iter().enumerate() {
                    c[d + j] += v;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The q-binomial `[m+p choose m]` evaluated at `q^power`.
pub fn gaussian_binomial(m: u64, p: u64, power: u64) -> QPolynomial {
    let mut out = QPolynomial::zero();
    for (d, c) in gaussian_coeffs(m, p).into_iter().enumerate() {
        out.add_term(Rational::from_integer((d as u64 * power) as i64), c);
    }
    out
}
