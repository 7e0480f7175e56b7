//! Double-exponential quadrature.
//!
//! Half-line integrals use the exp-sinh map `u = exp((pi/2) sinh(tau))`, i.e.
//! `u = e^v` followed by the double-exponential substitution `v = (pi/2)
//! sinh(tau)`. Algebraic endpoint behaviour at `0` such as `u^{-1/2}` and
//! exponential decay at infinity both become double-exponential decay in
//! `tau`. Finite intervals use tanh-sinh. Both refine by halving the step and
//! stop when successive trapezoid sums agree to the configured tolerance.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DistError;

const HALF_LINE_TAU_MAX: f64 = 4.5;
const FINITE_TAU_MAX: f64 = 4.0;
const INITIAL_STEP: f64 = 0.5;
const MIN_LEVELS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    #[default]
    DoubleExponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub scheme: QuadratureScheme,
    pub tolerance: f64,
    pub max_levels: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            scheme: QuadratureScheme::DoubleExponential,
            tolerance: 1e-10,
            max_levels: 12,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        QuadratureConfig {
            tolerance,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), DistError> {
        if !(self.tolerance.is_finite() && self.tolerance > f64::EPSILON) {
            return Err(DistError::InvalidTolerance(self.tolerance));
        }
        if self.max_levels < MIN_LEVELS {
            return Err(DistError::InvalidParameter(format!(
                "max_levels must be at least {MIN_LEVELS}"
            )));
        }
        Ok(())
    }
}

/// Values the integrators can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    pub levels: u32,
    pub evaluations: usize,
}

/// Trapezoid sums over `tau in [-tau_max, tau_max]` with step halving.
/// `node(tau)` returns the weighted integrand `f(x(tau)) x'(tau)`.
fn refine<T, G>(tau_max: f64, node: G, cfg: &QuadratureConfig) -> Result<QuadResult<T>, DistError>
where
    T: QuadValue,
    G: Fn(f64) -> Result<T, DistError>,
{
    cfg.validate()?;
    let mut sum = T::zero();
    let mut abs_sum = 0.0;
    let mut evaluations = 0usize;

    let base = (tau_max / INITIAL_STEP).floor() as i64;
    for k in -base..=base {
        let v = node(k as f64 * INITIAL_STEP)?;
        sum = sum + v;
        abs_sum += v.magnitude();
        evaluations += 1;
    }
    let mut h = INITIAL_STEP;
    let mut estimate = sum * h;
    let mut last_diff = f64::INFINITY;

    for level in 1..=cfg.max_levels {
        h *= 0.5;
        // new nodes are the odd multiples of the halved step
        let count = (tau_max / h).floor() as i64;
        let mut k = -count + if count % 2 == 0 { 1 } else { 0 };
        while k <= count {
            let v = node(k as f64 * h)?;
            sum = sum + v;
            abs_sum += v.magnitude();
            evaluations += 1;
            k += 2;
        }
        let next = sum * h;
        let diff = (next + estimate * -1.0).magnitude();
        let scale = abs_sum * h;
        estimate = next;
        last_diff = diff;
        if level >= MIN_LEVELS && diff <= cfg.tolerance * scale {
            return Ok(QuadResult {
                value: estimate,
                error_estimate: diff,
                levels: level,
                evaluations,
            });
        }
    }
    Err(DistError::NotConverged {
        value: estimate.magnitude(),
        error_estimate: last_diff,
    })
}

/// `int_0^inf f(u) du`.
pub fn integrate_half_line<T, F>(f: F, cfg: &QuadratureConfig) -> Result<QuadResult<T>, DistError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    refine(
        HALF_LINE_TAU_MAX,
        |tau| {
            let s = FRAC_PI_2 * tau.sinh();
            let u = s.exp();
            let jac = u * FRAC_PI_2 * tau.cosh();
            if u == 0.0 || !u.is_finite() {
                return Ok(T::zero());
            }
            let v = f(u);
            if !v.magnitude().is_finite() {
                return Err(DistError::NonFinite(u));
            }
            Ok(v * jac)
        },
        cfg,
    )
}

/// `int_a^b f(x) dx` where the integrand receives `(x - a, b - x)` so that
/// distances to either endpoint are available without cancellation.
pub fn integrate_interval<T, F>(a: f64, b: f64, f: F, cfg: &QuadratureConfig) -> Result<QuadResult<T>, DistError>
where
    T: QuadValue,
    F: Fn(f64, f64) -> T,
{
    let len = b - a;
    if len.is_nan() || len <= 0.0 {
        return Ok(QuadResult {
            value: T::zero(),
            error_estimate: 0.0,
            levels: 0,
            evaluations: 0,
        });
    }
    refine(
        FINITE_TAU_MAX,
        |tau| {
            let s = FRAC_PI_2 * tau.sinh();
            let from_a = len / (1.0 + (-2.0 * s).exp());
            let from_b = len / (1.0 + (2.0 * s).exp());
            let c = s.cosh();
            let jac = 0.5 * len * FRAC_PI_2 * tau.cosh() / (c * c);
            if from_a == 0.0 || from_b == 0.0 || jac == 0.0 {
                return Ok(T::zero());
            }
            let v = f(from_a, from_b);
            if !v.magnitude().is_finite() {
                return Err(DistError::NonFinite(a + from_a));
            }
            Ok(v * jac)
        },
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn exponential() {
        let r = integrate_half_line(|u: f64| (-u).exp(), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13, "{}", r.value);
        assert!(r.error_estimate < 1e-9);
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        // int_0^inf e^{-u} / sqrt(u) du = sqrt(pi)
        let r = integrate_half_line(|u: f64| (-u).exp() / u.sqrt(), &cfg()).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn essential_singularity_at_zero() {
        // int_0^inf exp(-u - 1/u) u^{-3/2} du = sqrt(pi) e^{-2}
        let r = integrate_half_line(|u: f64| (-u - 1.0 / u).exp() * u.powf(-1.5), &cfg()).unwrap();
        let exact = PI.sqrt() * (-2.0f64).exp();
        assert!((r.value - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn rational_tail() {
        // int_0^inf du / (1 + u^2) = pi / 2
        let r = integrate_half_line(|u: f64| 1.0 / (1.0 + u * u), &cfg()).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn complex_oscillatory() {
        // int_0^inf e^{iux} e^{-u} du = 1 / (1 - ix)
        let x = 0.8;
        let r = integrate_half_line(|u: f64| Complex64::new(0.0, u * x).exp() * (-u).exp(), &cfg()).unwrap();
        let exact = Complex64::new(1.0, -x).inv();
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn finite_interval_with_endpoint_singularities() {
        // int_0^1 dx / sqrt(x (1 - x)) = pi
        let r = integrate_interval(0.0, 1.0, |da: f64, db: f64| 1.0 / (da * db).sqrt(), &cfg()).unwrap();
        assert!((r.value - PI).abs() < 1e-11, "{}", r.value);
        let r = integrate_interval(2.0, 5.0, |da: f64, _| da * da, &cfg()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-12);
        let empty = integrate_interval(1.0, 1.0, |_, _| 1.0f64, &cfg()).unwrap();
        assert_eq!(empty.value, 0.0);
    }

    #[test]
    fn reports_non_convergence() {
        let tight = QuadratureConfig {
            max_levels: 3,
            tolerance: 1e-15,
            ..Default::default()
        };
        // u^{-0.999} is too singular to resolve in three levels
        let err = integrate_half_line(|u: f64| u.powf(-0.999) * (-u).exp(), &tight).unwrap_err();
        assert!(matches!(err, DistError::NotConverged { .. }), "{err:?}");
    }

    #[test]
    fn rejects_bad_config() {
        let bad = QuadratureConfig::with_tolerance(1e-17);
        assert!(matches!(
            integrate_half_line(|u: f64| (-u).exp(), &bad),
            Err(DistError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let r = integrate_half_line(|u: f64| if u > 1.0 { f64::NAN } else { 0.0 }, &cfg());
        assert!(matches!(r, Err(DistError::NonFinite(_))));
    }
}
