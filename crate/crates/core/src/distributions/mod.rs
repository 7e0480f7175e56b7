//! Densities on `(0, inf)`, their moments and characteristic functions, and
//! numerical certificates for the identities that tie them to the exact
//! polynomial sequences.

pub mod bessel_k;
pub mod checks;
pub mod quadrature;
pub mod sampler;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use bessel_k::{bessel_k_half, bessel_k_quadrature};
pub use checks::{
    convolution_density, convolution_factorization_check, kolmogorov_check, semigroup_check,
    w_via_bessel_k, y_via_bessel_k,
};
pub use quadrature::{QuadResult, QuadratureConfig};
pub use sampler::ig_sample;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistError {
    #[error("invalid distribution parameter: {0}")]
    InvalidParameter(String),
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("quadrature tolerance must exceed machine epsilon, got {0}")]
    InvalidTolerance(f64),
    #[error("quadrature did not converge: value {value}, error estimate {error_estimate}")]
    NotConverged { value: f64, error_estimate: f64 },
    #[error("integrand is not finite at u = {0}")]
    NonFinite(f64),
}

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// A law on `(0, inf)` given by its density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistSpec {
    /// `t exp(-(u-t)^2 / (2u)) / sqrt(2 pi u^3)`: mean `t`, shape `t^2`.
    InverseGaussian { t: f64 },
    /// Gamma with shape 1/2 and scale `2t`: `exp(-u/(2t)) / sqrt(2 pi t u)`.
    GammaHalf { t: f64 },
    /// `exp(-(u-1)^2 / (2tu)) / sqrt(2 pi t u)`; moments are `y_n(t)`.
    BesselMeasure { t: f64 },
    /// Law of `factor * X` for `X ~ base`.
    Dilated { base: Box<DistSpec>, factor: f64 },
    /// `u * base(u) / mean`, where `mean` is the first moment of `base`.
    SizeBiased { base: Box<DistSpec>, mean: f64 },
}

fn positive(name: &str, v: f64) -> Result<(), DistError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(DistError::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

impl DistSpec {
    pub fn inverse_gaussian(t: f64) -> Self {
        DistSpec::InverseGaussian { t }
    }

    pub fn gamma_half(t: f64) -> Self {
        DistSpec::GammaHalf { t }
    }

    pub fn bessel_measure(t: f64) -> Self {
        DistSpec::BesselMeasure { t }
    }

    pub fn dilated(base: DistSpec, factor: f64) -> Self {
        DistSpec::Dilated {
            base: Box::new(base),
            factor,
        }
    }

    pub fn size_biased(base: DistSpec, mean: f64) -> Self {
        DistSpec::SizeBiased {
            base: Box::new(base),
            mean,
        }
    }

    pub fn validate(&self) -> Result<(), DistError> {
        match self {
            DistSpec::InverseGaussian { t } | DistSpec::GammaHalf { t } | DistSpec::BesselMeasure { t } => {
                positive("t", *t)
            }
            DistSpec::Dilated { base, factor } => {
                positive("factor", *factor)?;
                base.validate()
            }
            DistSpec::SizeBiased { base, mean } => {
                positive("mean", *mean)?;
                if matches!(**base, DistSpec::SizeBiased { .. }) {
                    return Err(DistError::InvalidParameter(
                        "size-biasing may not be nested".into(),
                    ));
                }
                base.validate()
            }
        }
    }

    /// Natural log of the density; `-inf` on `u <= 0`.
    pub fn log_density(&self, u: f64) -> f64 {
        if u.is_nan() || u <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match self {
            DistSpec::InverseGaussian { t } => {
                t.ln() - (u - t) * (u - t) / (2.0 * u) - HALF_LN_2PI - 1.5 * u.ln()
            }
            DistSpec::GammaHalf { t } => -u / (2.0 * t) - HALF_LN_2PI - 0.5 * (t * u).ln(),
            DistSpec::BesselMeasure { t } => {
                -(u - 1.0) * (u - 1.0) / (2.0 * t * u) - HALF_LN_2PI - 0.5 * (t * u).ln()
            }
            DistSpec::Dilated { base, factor } => base.log_density(u / factor) - factor.ln(),
            DistSpec::SizeBiased { base, mean } => u.ln() + base.log_density(u) - mean.ln(),
        }
    }

    pub fn density(&self, u: f64) -> f64 {
        if u.is_nan() || u <= 0.0 {
            return 0.0;
        }
        self.log_density(u).exp()
    }

    /// Closed-form `E[exp(i x U)]` with principal square roots.
    pub fn char_fun(&self, x: f64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            DistSpec::InverseGaussian { t } => {
                let s = Complex64::new(1.0, -2.0 * x).sqrt();
                (t * (one - s)).exp()
            }
            DistSpec::GammaHalf { t } => Complex64::new(1.0, -2.0 * t * x).sqrt().inv(),
            DistSpec::BesselMeasure { t } => {
                let s = Complex64::new(1.0, -2.0 * t * x).sqrt();
                ((one - s) / *t).exp() / s
            }
            DistSpec::Dilated { base, factor } => base.char_fun(factor * x),
            DistSpec::SizeBiased { base, mean } => {
                base.char_fun_derivative(x) * Complex64::new(0.0, -1.0) / *mean
            }
        }
    }

    fn char_fun_derivative(&self, x: f64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        match self {
            DistSpec::InverseGaussian { t } => {
                let s = Complex64::new(1.0, -2.0 * x).sqrt();
                self.char_fun(x) * i * *t / s
            }
            DistSpec::GammaHalf { t } => {
                let s = Complex64::new(1.0, -2.0 * t * x).sqrt();
                i * *t / (s * s * s)
            }
            DistSpec::BesselMeasure { t } => {
                let s = Complex64::new(1.0, -2.0 * t * x).sqrt();
                let e = ((Complex64::new(1.0, 0.0) - s) / *t).exp();
                e * i * (s + *t) / (s * s * s)
            }
            DistSpec::Dilated { base, factor } => base.char_fun_derivative(factor * x) * *factor,
            DistSpec::SizeBiased { .. } => Complex64::new(f64::NAN, f64::NAN),
        }
    }
}

pub fn density(d: &DistSpec, u: f64) -> f64 {
    d.density(u)
}

pub fn char_fun(d: &DistSpec, x: f64) -> Complex64 {
    d.char_fun(x)
}

/// `int_0^inf u^n density(u) du`.
pub fn moment(d: &DistSpec, n: u32, cfg: &QuadratureConfig) -> Result<QuadResult<f64>, DistError> {
    d.validate()?;
    let n = n as f64;
    quadrature::integrate_half_line(|u: f64| (n * u.ln() + d.log_density(u)).exp(), cfg)
}

/// `int_0^inf exp(i u x) density(u) du` by direct quadrature.
pub fn char_fun_quadrature(d: &DistSpec, x: f64, cfg: &QuadratureConfig) -> Result<QuadResult<Complex64>, DistError> {
    d.validate()?;
    quadrature::integrate_half_line(
        |u: f64| Complex64::new(0.0, u * x).exp() * d.density(u),
        cfg,
    )
}

/// `sqrt(u) exp(-u/2) / sqrt(2 pi)`, the probability density attached to
/// the Kolmogorov measure of `1 - sqrt(1 - 2ix)`.
pub fn kolmogorov_density(u: f64) -> f64 {
    if u.is_nan() || u <= 0.0 {
        return 0.0;
    }
    u.sqrt() * (-u / 2.0).exp() / (2.0 * PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::besselpoly::{bessel_poly, carlitz_w};
    use crate::exact::rational::{int, to_f64};
    use crate::exact::Rational;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn all_kinds(t: f64) -> Vec<DistSpec> {
        vec![
            DistSpec::inverse_gaussian(t),
            DistSpec::gamma_half(t),
            DistSpec::bessel_measure(t),
            DistSpec::dilated(DistSpec::inverse_gaussian(1.0 / t), t),
            DistSpec::size_biased(DistSpec::inverse_gaussian(t), t),
        ]
    }

    #[test]
    fn density_examples() {
        for d in all_kinds(1.0) {
            assert_eq!(d.density(-1.0), 0.0);
            assert_eq!(d.density(0.0), 0.0);
        }
        let v = DistSpec::inverse_gaussian(1.0).density(1.0);
        assert!((v - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-16);
    }

    #[test]
    fn dilated_inverse_gaussian_matches_explicit_formula() {
        for t in [0.5, 1.0, 2.0] {
            let d = DistSpec::dilated(DistSpec::inverse_gaussian(1.0 / t), t);
            for u in [0.1, 0.7, 1.0, 3.0] {
                let explicit = (-(u - 1.0f64).powi(2) / (2.0 * t * u)).exp() / (2.0 * PI * t * u * u * u).sqrt();
                assert!((d.density(u) - explicit).abs() < 1e-14 * explicit.max(1.0));
            }
        }
    }

    #[test]
    fn normalization() {
        for t in [0.5, 1.0, 2.0] {
            for d in all_kinds(t) {
                let m0 = moment(&d, 0, &cfg()).unwrap();
                assert!((m0.value - 1.0).abs() < 1e-10, "{d:?}: {}", m0.value);
            }
        }
    }

    #[test]
    fn moment_examples() {
        let w = carlitz_w(8);
        let m3 = moment(&DistSpec::inverse_gaussian(1.0), 3, &cfg()).unwrap().value;
        assert!((m3 - 7.0).abs() / 7.0 < 1e-10);
        assert_eq!(w.get(3).unwrap().eval(&int(1)), int(7));
        let m2 = moment(&DistSpec::bessel_measure(2.0), 2, &cfg()).unwrap().value;
        assert!((m2 - 19.0).abs() / 19.0 < 1e-10);
        assert_eq!(bessel_poly(2).get(2).unwrap().eval(&int(2)), int(19));
    }

    #[test]
    fn size_biased_moments_shift_the_index() {
        // moments of u rho_2(u) / 2 are w_{n+1}(2) / 2
        let w = carlitz_w(6);
        let d = DistSpec::size_biased(DistSpec::inverse_gaussian(2.0), 2.0);
        for n in 0..5 {
            let exact = to_f64(&(w.get(n + 1).unwrap().eval(&int(2)) / int(2)));
            let m = moment(&d, n as u32, &cfg()).unwrap().value;
            assert!((m - exact).abs() / exact < 1e-9, "n={n}");
        }
        let half = Rational::new(1.into(), 2.into());
        let d = DistSpec::dilated(DistSpec::inverse_gaussian(0.5), 2.0);
        for n in 0..5u32 {
            let exact = to_f64(&(w.get(n as usize).unwrap().eval(&half) * int(1 << n)));
            let m = moment(&d, n, &cfg()).unwrap().value;
            assert!((m - exact).abs() / exact < 1e-9, "n={n}");
        }
    }

    #[test]
    fn char_fun_examples() {
        for d in all_kinds(1.3) {
            assert!((d.char_fun(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15, "{d:?}");
        }
        let ig = DistSpec::inverse_gaussian(1.0);
        let q = char_fun_quadrature(&ig, 0.5, &cfg()).unwrap().value;
        assert!((q - ig.char_fun(0.5)).norm() < 1e-8);
        for x in [-0.9, 0.2, 0.75] {
            let lhs = DistSpec::inverse_gaussian(0.4).char_fun(x) * DistSpec::inverse_gaussian(1.1).char_fun(x);
            let rhs = DistSpec::inverse_gaussian(1.5).char_fun(x);
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn char_fun_matches_quadrature_for_every_kind() {
        for t in [0.5, 1.0, 2.0] {
            for d in all_kinds(t) {
                for x in [-1.0, -0.4, 0.3, 1.0] {
                    let q = char_fun_quadrature(&d, x, &cfg()).unwrap().value;
                    let c = d.char_fun(x);
                    assert!((q - c).norm() < 1e-7, "{d:?} x={x}: {q} vs {c}");
                }
            }
        }
    }

    #[test]
    fn validation() {
        assert!(DistSpec::inverse_gaussian(0.0).validate().is_err());
        assert!(DistSpec::gamma_half(-1.0).validate().is_err());
        assert!(DistSpec::dilated(DistSpec::bessel_measure(1.0), 0.0).validate().is_err());
        let nested = DistSpec::size_biased(DistSpec::size_biased(DistSpec::inverse_gaussian(1.0), 1.0), 2.0);
        assert!(nested.validate().is_err());
        assert!(moment(&DistSpec::bessel_measure(f64::NAN), 1, &cfg()).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let d = DistSpec::dilated(DistSpec::inverse_gaussian(0.5), 2.0);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"dilated":{"base":{"inverse-gaussian":{"t":0.5}},"factor":2.0}}"#
        );
        let back: DistSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn kolmogorov_density_normalized() {
        let r = quadrature::integrate_half_line(kolmogorov_density, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }
}
