//! Truncated formal power series over [`Rational`].
//!
//! A series of order `N` stores the coefficients of `x^0 ..= x^N`; nothing is
//! known about higher terms. Binary operations return the smaller of the two
//! operand orders.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::poly::Poly;
use super::rational::Rational;

/// Truncation order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series must have zero constant term, got {0}")]
    NonzeroConstant(Rational),
    #[error("series is not reversible: linear coefficient is zero")]
    ZeroLinearTerm,
    #[error("square root needs constant term 1, got {0}")]
    SqrtConstant(Rational),
    #[error("reciprocal needs a nonzero constant term")]
    ZeroConstant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPowerSeries {
    coeffs: Vec<Rational>,
}

impl FormalPowerSeries {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        FormalPowerSeries { coeffs }
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        FormalPowerSeries { coeffs }
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().to_vec(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_coeffs(vec![Rational::one()], order)
    }

    /// The identity series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// `c * x^k`, truncated at `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormalPowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `x * self`; the order grows by one because the new constant is known.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        FormalPowerSeries { coeffs }
    }

    /// `(self - self(0)) / x`; the order drops by one.
    pub fn div_x(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        FormalPowerSeries {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// `d/dx`; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        FormalPowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer(k.into()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `outer(inner(x))` by Horner's scheme over series.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant(inner.constant_term().clone()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::from_coeffs(vec![self.coeffs[order].clone()], order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[x^n] f = (1/n) [x^{n-1}] (x / g(x))^n`.
    pub fn reverse(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant(self.constant_term().clone()));
        }
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(SeriesError::ZeroLinearTerm);
        }
        // x / g(x) is known to order N - 1.
        let x_over_g = self.div_x().recip()?;
        let mut out = Self::zero(order);
        let mut power = Self::one(order - 1);
        for n in 1..=order {
            power = &power * &x_over_g;
            out.coeffs[n] = &power.coeffs[n - 1] / Rational::from_integer(n.into());
        }
        Ok(out)
    }

    /// `exp(self)` from the recurrence `n h_n = sum_k k f_k h_{n-k}` that
    /// follows from `h' = f' h`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant(self.constant_term().clone()));
        }
        let order = self.order();
        let mut h: Vec<Rational> = Vec::with_capacity(order + 1);
        h.push(Rational::one());
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if !f.is_zero() {
                    acc += f * Rational::from_integer(k.into()) * &h[n - k];
                }
            }
            h.push(acc / Rational::from_integer(n.into()));
        }
        Ok(FormalPowerSeries { coeffs: h })
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::SqrtConstant(self.constant_term().clone()));
        }
        let order = self.order();
        let two = Rational::from_integer(2.into());
        let mut r: Vec<Rational> = Vec::with_capacity(order + 1);
        r.push(Rational::one());
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &r[k] * &r[n - k];
            }
            r.push(acc / &two);
        }
        Ok(FormalPowerSeries { coeffs: r })
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        if self.constant_term().is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        let inv0 = self.constant_term().recip();
        let order = self.order();
        let mut r: Vec<Rational> = Vec::with_capacity(order + 1);
        r.push(inv0.clone());
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if !f.is_zero() {
                    acc += f * &r[n - k];
                }
            }
            r.push(-acc * &inv0);
        }
        Ok(FormalPowerSeries { coeffs: r })
    }
}

impl Add for &FormalPowerSeries {
    type Output = FormalPowerSeries;
    fn add(self, rhs: &FormalPowerSeries) -> FormalPowerSeries {
        let order = self.order().min(rhs.order());
        FormalPowerSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &FormalPowerSeries {
    type Output = FormalPowerSeries;
    fn sub(self, rhs: &FormalPowerSeries) -> FormalPowerSeries {
        let order = self.order().min(rhs.order());
        FormalPowerSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &FormalPowerSeries {
    type Output = FormalPowerSeries;
    fn neg(self) -> FormalPowerSeries {
        FormalPowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &FormalPowerSeries {
    type Output = FormalPowerSeries;
    fn mul(self, rhs: &FormalPowerSeries) -> FormalPowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        FormalPowerSeries { coeffs: out }
    }
}

impl Serialize for FormalPowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::rational::rational_vec::serialize(&self.coeffs, s)
    }
}
