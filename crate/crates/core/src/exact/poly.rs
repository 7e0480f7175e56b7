//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{binomial, parse_rational, Rational};

/// `coeffs[k]` is the coefficient of `t^k`. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn diff(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// `k`-fold derivative.
    pub fn diff_n(&self, k: usize) -> Poly {
        let mut out = self.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.diff();
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }

    /// Returns `q` with `q(t) = p(t + s)`.
    pub fn taylor_shift(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        let mut acc = Rational::one();
        for _ in 0..n {
            powers.push(acc.clone());
            acc *= s;
        }
        let mut out = vec![Rational::zero(); n];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let c = Rational::from_integer(binomial(k as u64, j as u64));
                *slot += a * c * &powers[k - j];
            }
        }
        Poly::new(out)
    }

    /// `t^n * p(1/t)`, i.e. the coefficient list reversed inside a window of
    /// length `n + 1`. Requires `n >= deg p`.
    pub fn reciprocal(&self, n: usize) -> Poly {
        assert!(
            self.degree().is_none_or(|d| d <= n),
            "reciprocal window {n} is below the degree"
        );
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = a.clone();
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})*t")?,
                _ => write!(f, "({a})*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::rational::rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        let coeffs = texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn diff_examples() {
        assert!(Poly::one().diff().is_zero());
        assert_eq!(Poly::monomial(int(1), 5).diff(), Poly::monomial(int(5), 4));
        assert_eq!(p(&[0, 2, 0, 1]).diff(), p(&[2, 0, 3]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[0, 1, 1]).eval(&int(1)), int(2));
        assert_eq!(p(&[4, 1, 9]).eval(&int(0)), int(4));
        assert_eq!(p(&[0, 3, 3, 1]).eval(&int(1)), int(7));
        assert_eq!(p(&[1, 2]).eval(&rat(1, 2)), int(2));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&int(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[3, 0, 5]).taylor_shift(&int(0)), p(&[3, 0, 5]));
        let cube = p(&[0, 0, 0, 1]);
        assert_eq!(cube.taylor_shift(&int(-1)).taylor_shift(&int(1)), cube);
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let z = p(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn reciprocal_window() {
        // t^3 * (1 + 3/t + 3/t^2) = t^3 + 3t^2 + 3t
        assert_eq!(p(&[1, 3, 3]).reciprocal(3), p(&[0, 3, 3, 1]));
    }

    #[test]
    fn json_encoding() {
        let q = Poly::new(vec![rat(-1, 2), int(0), int(3)]);
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, r#"["-1/2","0","3"]"#);
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-9i64..=9, 1i64..=5), 0..7)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn shift_roundtrip(q in small_poly(), n in -7i64..=7, d in 1i64..=4) {
            let s = rat(n, d);
            prop_assert_eq!(q.taylor_shift(&s).taylor_shift(&-s.clone()), q.clone());
        }

        #[test]
        fn shift_agrees_with_eval(q in small_poly(), s in -5i64..=5, x in -5i64..=5) {
            prop_assert_eq!(q.taylor_shift(&int(s)).eval(&int(x)), q.eval(&int(s + x)));
        }

        #[test]
        fn diff_lowers_degree_by_one(q in small_poly()) {
            if let Some(d) = q.degree() {
                if d > 0 {
                    prop_assert_eq!(q.diff().degree(), Some(d - 1));
                } else {
                    prop_assert!(q.diff().is_zero());
                }
            }
        }
    }
}
