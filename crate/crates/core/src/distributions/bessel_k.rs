//! Modified Bessel function of the second kind at half-integer order.

use std::f64::consts::PI;

use super::quadrature::{integrate_half_line, QuadResult, QuadratureConfig};
use super::DistError;

/// `e^z K_{m+1/2}(z)`. Negative orders reflect through `K_{-nu} = K_nu`.
pub fn bessel_k_half_scaled(m: i64, z: f64) -> Result<f64, DistError> {
    if !(z.is_finite() && z > 0.0) {
        return Err(DistError::NonPositiveArgument(z));
    }
    let m = if m < 0 { -m - 1 } else { m };
    // K_{1/2}, then K_{3/2} = K_{1/2} (1 + 1/z), then upward recurrence
    // K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu, stable for K.
    let k_half = (PI / (2.0 * z)).sqrt();
    if m == 0 {
        return Ok(k_half);
    }
    let mut prev = k_half;
    let mut cur = k_half * (1.0 + 1.0 / z);
    for j in 1..m {
        let nu = j as f64 + 0.5;
        let next = prev + 2.0 * nu / z * cur;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `K_{m+1/2}(z)` for `z > 0`.
pub fn bessel_k_half(m: i64, z: f64) -> Result<f64, DistError> {
    Ok(bessel_k_half_scaled(m, z)? * (-z).exp())
}

/// `K_nu(z) = (1/2) (z/2)^nu int_0^inf exp(-v - z^2/(4v)) v^{-nu-1} dv`,
/// integrated numerically. Used as an independent oracle for any real order.
pub fn bessel_k_quadrature(nu: f64, z: f64, cfg: &QuadratureConfig) -> Result<QuadResult<f64>, DistError> {
    if !(z.is_finite() && z > 0.0) {
        return Err(DistError::NonPositiveArgument(z));
    }
    let log_prefactor = nu * (z / 2.0).ln() - std::f64::consts::LN_2;
    let zz = z * z / 4.0;
    integrate_half_line(
        |v: f64| (log_prefactor - v - zz / v - (nu + 1.0) * v.ln()).exp(),
        cfg,
    )
}
