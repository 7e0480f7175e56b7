//! Bessel polynomials `y_n` and the basic polynomials `w_n` of `D - D^2/2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::deltaops::{BinomialSequence, SequenceSource};
use crate::exact::rational::{factorial, pow};
use crate::exact::{FormalPowerSeries, Poly, Rational, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BesselPolyError {
    #[error("t0 must be nonzero")]
    ZeroT,
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `polys[n] = y_n(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BesselPolySeq {
    polys: Vec<Poly>,
}

impl BesselPolySeq {
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> Option<&Poly> {
        self.polys.get(n)
    }
}

/// `y_n(t) = sum_{j=0}^n (n+j)! / (j! (n-j)!) (t/2)^j`.
pub fn bessel_poly(nmax: usize) -> BesselPolySeq {
    let half = Rational::new(1.into(), 2.into());
    let polys = (0..=nmax)
        .map(|n| {
            Poly::new(
                (0..=n)
                    .map(|j| {
                        let num = factorial((n + j) as u64);
                        let den = factorial(j as u64) * factorial((n - j) as u64);
                        Rational::new(num, den) * pow(&half, j as u32)
                    })
                    .collect(),
            )
        })
        .collect();
    BesselPolySeq { polys }
}

/// `w_n(t) = sum_{j=0}^{n-1} (n+j-1)! t^{n-j} / (j! (n-j-1)! 2^j)`, `w_0 = 1`.
pub fn carlitz_w(nmax: usize) -> BinomialSequence {
    let mut polys = vec![Poly::one()];
    for n in 1..=nmax {
        let mut cs = vec![Rational::zero(); n + 1];
        for j in 0..n {
            let num = factorial((n + j - 1) as u64);
            let den = factorial(j as u64) * factorial((n - j - 1) as u64) * (BigInt::one() << j);
            cs[n - j] = Rational::new(num, den);
        }
        polys.push(Poly::new(cs));
    }
    BinomialSequence::new(polys, SequenceSource::ClosedForm)
}

/// Same polynomials indexed by the power of `t`:
/// `w_n(t) = sum_{k=1}^n (2n-k-1)! t^k / ((n-k)! (k-1)! 2^{n-k})`.
pub fn carlitz_w_by_power(nmax: usize) -> BinomialSequence {
    let mut polys = vec![Poly::one()];
    for n in 1..=nmax {
        let mut cs = vec![Rational::zero(); n + 1];
        for (k, slot) in cs.iter_mut().enumerate().skip(1) {
            let num = factorial((2 * n - k - 1) as u64);
            let den = factorial((n - k) as u64) * factorial((k - 1) as u64) * (BigInt::one() << (n - k));
            *slot = Rational::new(num, den);
        }
        polys.push(Poly::new(cs));
    }
    BinomialSequence::new(polys, SequenceSource::ClosedForm)
}

/// `w_n(t) = t^n y_{n-1}(1/t)` for every `1 <= n <= nmax`, coefficient by
/// coefficient.
pub fn w_bessel_relation_check(nmax: usize) -> bool {
    if nmax == 0 {
        return true;
    }
    let w = carlitz_w(nmax);
    let y = bessel_poly(nmax - 1);
    (1..=nmax).all(|n| {
        let y_prev = &y.polys[n - 1];
        w.get(n) == Some(&y_prev.reciprocal(n))
    })
}

fn radical_parts(t0: &Rational, order: usize) -> Result<(FormalPowerSeries, FormalPowerSeries), SeriesError> {
    // sqrt(1 - 2 t0 x) and exp((1 - sqrt(1 - 2 t0 x)) / t0)
    let two_t = t0 * Rational::from_integer(2.into());
    let radicand = FormalPowerSeries::from_coeffs(vec![Rational::one(), -two_t], order);
    let root = radicand.sqrt()?;
    let exponent = (&FormalPowerSeries::one(order) - &root).scale(&t0.recip());
    Ok((root.clone(), exponent.exp()?))
}

/// `exp((1 - sqrt(1 - 2 t0 x)) / t0) / sqrt(1 - 2 t0 x)` truncated at `order`.
pub fn bessel_egf_closed_form(t0: &Rational, order: usize) -> Result<FormalPowerSeries, BesselPolyError> {
    if t0.is_zero() {
        return Err(BesselPolyError::ZeroT);
    }
    let (root, e) = radical_parts(t0, order)?;
    Ok(&e * &root.recip()?)
}

/// `sum_n y_n(t0) x^n / n!` truncated at `order`.
pub fn bessel_egf_from_polys(t0: &Rational, order: usize) -> FormalPowerSeries {
    let y = bessel_poly(order);
    FormalPowerSeries::new(
        y.polys
            .iter()
            .enumerate()
            .map(|(n, p)| p.eval(t0) / Rational::from_integer(factorial(n as u64)))
            .collect(),
    )
}

pub fn bessel_egf_check(t0: &Rational, order: usize) -> Result<bool, BesselPolyError> {
    if order == 0 {
        return Err(BesselPolyError::ZeroOrder);
    }
    let rhs = bessel_egf_closed_form(t0, order)?;
    Ok(bessel_egf_from_polys(t0, order) == rhs)
}

/// The closed-form EGF equals `d/dx exp((1 - sqrt(1 - 2 t0 x)) / t0)`.
pub fn egf_derivative_check(t0: &Rational, order: usize) -> Result<bool, BesselPolyError> {
    if order == 0 {
        return Err(BesselPolyError::ZeroOrder);
    }
    let rhs = bessel_egf_closed_form(t0, order)?;
    let (_, e) = radical_parts(t0, order + 1)?;
    Ok(e.derivative() == rhs)
}
