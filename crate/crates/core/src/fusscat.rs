//! Fuss numbers `C(np+1, n) / (np+1)` and their generating function `B_p`.

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exact::rational::{binomial, is_integral};
use crate::exact::{FormalPowerSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FussError {
    #[error("Fuss order p must be >= 1, got {0}")]
    InvalidOrder(i64),
    #[error("index n must be >= 0, got {0}")]
    NegativeIndex(i64),
}

pub fn fuss_number(p: i64, n: i64) -> Result<Rational, FussError> {
    if p < 1 {
        return Err(FussError::InvalidOrder(p));
    }
    if n < 0 {
        return Err(FussError::NegativeIndex(n));
    }
    let top = (n * p + 1) as u64;
    Ok(Rational::new(binomial(top, n as u64), top.into()))
}

/// `B_p` truncated at some order; coefficients are the Fuss numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FussSeries {
    p: i64,
    series: FormalPowerSeries,
}

impl FussSeries {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn series(&self) -> &FormalPowerSeries {
        &self.series
    }

    /// `B_p - 1 - x B_p^p`; the zero series when the functional equation holds.
    pub fn functional_equation_residual(&self) -> FormalPowerSeries {
        let order = self.series.order();
        let x_bp = self.series.pow(self.p as u32).mul_x().truncate(order);
        &(&self.series - &FormalPowerSeries::one(order)) - &x_bp
    }
}

/// Built coefficient-by-coefficient from the explicit binomial formula, so the
/// functional equation stays an independent check.
pub fn fuss_series(p: i64, order: i64) -> Result<FussSeries, FussError> {
    if p < 1 {
        return Err(FussError::InvalidOrder(p));
    }
    if order < 0 {
        return Err(FussError::NegativeIndex(order));
    }
    let coeffs = (0..=order)
        .map(|n| fuss_number(p, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FussSeries {
        p,
        series: FormalPowerSeries::new(coeffs),
    })
}

/// `(1 - sqrt(1 - 4x)) / (2x)` expanded with exact series arithmetic.
pub fn catalan_by_radicals(order: usize) -> FormalPowerSeries {
    let radicand =
        FormalPowerSeries::from_coeffs(vec![Rational::one(), Rational::from_integer((-4).into())], order + 1);
    let root = radicand.sqrt().expect("constant term is 1");
    let numerator = &FormalPowerSeries::one(order + 1) - &root;
    numerator
        .div_x()
        .scale(&Rational::new(1.into(), 2.into()))
}

/// Integral coefficients go out as bare JSON integers of any size, anything
/// else as `"p/q"` strings.
impl Serialize for FussSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self.series.coeffs();
        let mut seq = s.serialize_seq(Some(coeffs.len()))?;
        for c in coeffs {
            if is_integral(c) {
                let number: serde_json::Number = c
                    .numer()
                    .to_string()
                    .parse()
                    .map_err(serde::ser::Error::custom)?;
                seq.serialize_element(&number)?;
            } else {
                seq.serialize_element(&c.to_string())?;
            }
        }
        seq.end()
    }
}

/// `true` when every coefficient has denominator 1.
pub fn is_integral_series(s: &FormalPowerSeries) -> bool {
    s.coeffs().iter().all(is_integral)
}

pub fn residual_is_zero(fs: &FussSeries) -> bool {
    fs.functional_equation_residual().coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn fuss_number_examples() {
        for p in 1..=6 {
            assert_eq!(fuss_number(p, 0).unwrap(), int(1));
        }
        let catalan: Vec<Rational> = (0..5).map(|n| fuss_number(2, n).unwrap()).collect();
        assert_eq!(catalan, vec![int(1), int(1), int(2), int(5), int(14)]);
        assert_eq!(fuss_number(3, 2).unwrap(), int(3));
        assert_eq!(fuss_number(0, 2), Err(FussError::InvalidOrder(0)));
        assert_eq!(fuss_number(2, -1), Err(FussError::NegativeIndex(-1)));
    }

    #[test]
    fn catalan_agrees_with_radicals() {
        let expanded = catalan_by_radicals(8);
        assert_eq!(&expanded.coeffs()[..5], &[int(1), int(1), int(2), int(5), int(14)]);
        assert_eq!(fuss_series(2, 8).unwrap().series(), &expanded);
    }

    #[test]
    fn functional_equation_order_twenty() {
        let fs = fuss_series(4, 20).unwrap();
        assert!(fs.functional_equation_residual().is_zero());
        assert_eq!(fs.functional_equation_residual().order(), 20);
        for p in 1..=6 {
            assert_eq!(fuss_series(p, 0).unwrap().series().constant_term(), &int(1));
        }
    }

    #[test]
    fn residual_detects_corruption() {
        let fs = fuss_series(3, 6).unwrap();
        let mut cs = fs.series().coeffs().to_vec();
        cs[4] += int(1);
        let bad = FussSeries {
            p: 3,
            series: FormalPowerSeries::new(cs),
        };
        assert!(!residual_is_zero(&bad));
    }

    #[test]
    fn integrality() {
        for p in 1..=6 {
            assert!(is_integral_series(fuss_series(p, 40).unwrap().series()));
        }
    }

    #[test]
    fn serializes_as_json_integers() {
        let text = serde_json::to_string(&fuss_series(2, 5).unwrap()).unwrap();
        assert_eq!(text, "[1,1,2,5,14,42]");
        let big = serde_json::to_string(&fuss_series(6, 40).unwrap()).unwrap();
        let expected = fuss_number(6, 40).unwrap().numer().to_string();
        assert!(big.ends_with(&format!(",{expected}]")));
    }
}
