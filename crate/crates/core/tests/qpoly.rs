use krcomb::qpoly::gaussian_binomial;
use krcomb::{QPolynomial, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((-6i64..7, 1i64..3, -5i64..6), 0..6).prop_map(|terms| {
        let mut p = QPolynomial::zero();
        for (num, den, c) in terms {
            p.add_term(Rational::new(num, den), BigInt::from(c));
        }
        p
    })
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

#[test]
fn display() {
    let q = |e: i64, c: i64| QPolynomial::monomial(Rational::from_integer(e), c);
    assert_eq!(QPolynomial::zero().to_string(), "0");
    assert_eq!(QPolynomial::one().to_string(), "1");
    assert_eq!(q(1, 1).to_string(), "q");
    assert_eq!((&q(2, 1) + &q(0, -3)).to_string(), "-3 + q^2");
    assert_eq!(QPolynomial::monomial(Rational::new(-1, 2), 2).to_string(), "2q^(-1/2)");
}

#[test]
fn small_gaussian_binomials() {
    // [4 choose 2] = 1 + q + 2q^2 + q^3 + q^4
    let coeffs: Vec<i64> = vec![1, 1, 2, 1, 1];
    let expected = QPolynomial::from_coeffs(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
    assert_eq!(gaussian_binomial(2, 2, 1), expected);
    assert_eq!(gaussian_binomial(0, 5, 1), QPolynomial::one());
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QPolynomial::one(), a.clone());
        prop_assert!((&a * &QPolynomial::zero()).is_zero());
    }

    #[test]
    fn substitutions(a in poly(), b in poly(), e in -4i64..5) {
        let e = Rational::new(e, 2);
        prop_assert_eq!(a.invert().invert(), a.clone());
        prop_assert_eq!((&a * &b).invert(), &a.invert() * &b.invert());
        prop_assert_eq!(a.shift(e).shift(-e), a.clone());
        prop_assert_eq!(a.at_one(), a.invert().at_one());
        prop_assert_eq!((&a * &b).at_one(), a.at_one() * b.at_one());
        if !a.is_zero() {
            prop_assert_eq!(a.shift(e).offset_from(&a), Some(e));
        }
    }

    #[test]
    fn gaussian_binomial_properties(m in 0u64..8, p in 0u64..8, power in 1u64..3) {
        let g = gaussian_binomial(m, p, power);
        prop_assert_eq!(g.at_one(), binomial(m + p, m));
        prop_assert_eq!(g.clone(), gaussian_binomial(p, m, power));
        // palindromic of degree m p power
        let top = Rational::from_integer((m * p * power) as i64);
        prop_assert_eq!(g.invert().shift(top), g.clone());
        prop_assert!(g.terms().all(|(_, c)| c > &BigInt::from(0)));
    }
}
